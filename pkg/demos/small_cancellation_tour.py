# Pieces, the metric condition, and Dehn's algorithm on the genus-2 surface group.
import os
from fractions import Fraction

from dcgrowth import (BallOracle, check_metric_condition, dehn_reduce, geodesic_length,
                      make_oracle, max_piece, symmetrize)
from dcgrowth.words import compact_word, read_presentation

here = os.path.dirname(os.path.abspath(__file__))
g = read_presentation(os.path.join(here, "data", "genus2.pres"))
names = g.generator_names

s = symmetrize(g)
print(len(s), "symmetrized relators")      # 16: 8 rotations of r and of r^-1
rep = max_piece(s)
print("max piece", rep.max_piece_length)   # 1
print(check_metric_condition(s, Fraction(1, 6)))  # True, so Dehn's algorithm solves the word problem

w = g.word("abABc")          # five letters of an eight-letter relator
print(compact_word(dehn_reduce(w, s), names))  # dcD, the other three letters inverted

# an independent check: bounded coset enumeration agrees
ball = BallOracle(g, 6)
print(ball.equal(w, g.word("dcD")))

# group lengths through the Dehn oracle
o = make_oracle(g)
for text in ["abAB", "abABc", "abABcd"]:
    print(text, geodesic_length(g.word(text), o, 8))

# the torus fails C'(1/4): its pieces are a quarter of the relator
z2 = read_presentation(os.path.join(here, "data", "Z2.pres"))
print(check_metric_condition(symmetrize(z2), Fraction(1, 4)))

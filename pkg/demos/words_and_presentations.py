# Words, presentations and balls in Cayley graphs.
import os

from dcgrowth import enumerate_ball, free_reduce, make_oracle, parse_presentation
from dcgrowth.words import compact_word, cyclic_reduce, read_presentation

here = os.path.dirname(os.path.abspath(__file__))

p = parse_presentation("< a b | a b A B >")  # uppercase letters are inverses
print(p)                                     # < a b | a b A B >
w = p.word("aBbbA")                          # parsed and freely reduced
print(compact_word(w, p.generator_names))    # abA
print(cyclic_reduce(w))                      # ((1,), (2,)): w = a b a^-1

# letters are signed ints: a = 1, A = -1, b = 2, B = -2
print(free_reduce([1, 2, -2, -1, 2]))        # (2,)

# spheres of the free group grow by a factor 3, the square lattice linearly
for name in ("F2.pres", "Z2.pres", "C7.pres"):
    g = read_presentation(os.path.join(here, "data", name))
    ball = enumerate_ball(g, make_oracle(g, radius=8), 4)
    print(name, ball.counts())

# each element is stored as its ShortLex-least word
z2 = read_presentation(os.path.join(here, "data", "Z2.pres"))
ball = enumerate_ball(z2, make_oracle(z2, radius=6), 2)
print([compact_word(e, "ab") for e in ball.layers[2]])
print(compact_word(ball.locate(z2.word("baBab")), "ab"))  # the representative of b a b^-1 a b

# Double coset growth in the free group of rank 2.
import random

from dcgrowth import (Theorem2Config, double_coset_canonical_free, double_coset_growth_free,
                      fit_rate, fold_core, is_finite_index, theorem2_experiment)
from dcgrowth.words import compact_word, free_growth

a, b = 1, 2
A = fold_core([(a,)], 2)   # Stallings graph of <a>: one vertex, one loop
B = fold_core([(b,)], 2)
print(A)

# canonical double coset representatives are ShortLex-least words
for text in ["ba", "aabAbbb", "aaaBB"]:
    h = tuple({"a": a, "A": -a, "b": b, "B": -b}[c] for c in text)
    print(text, "->", compact_word(double_coset_canonical_free(A, B, h), "ab") or "1")

series = double_coset_growth_free(2, A, B, 8)
f = [free_growth(2, r) for r in range(9)]
print(series.counts)
print([round(c / n, 4) for c, n in zip(series.counts, f)])  # settles near 1/4
print("rate", round(fit_rate(series, 3), 4))

# a random infinite-index pair still grows like the whole group
rng = random.Random(3)
gens = [tuple(rng.choice([a, -a, b, -b]) for _ in range(3))]
C = fold_core(gens, 2)
print(compact_word(gens[0], "ab"), "finite index:", is_finite_index(C))
print(double_coset_growth_free(2, C, B, 6).counts)

# the lower bound experiment: distinct double cosets A s B from separator-glued words
cfg = Theorem2Config(2, [(a,)], [(b,)], (b, a, -b), (a, b, -a), 2, (a, a, a), (b, b, b))
rep = theorem2_experiment(cfg)
print("words", rep["m"], "distinct", rep["distinct"], "collision factor", rep["collision_factor"])
print(float(rep["lambda_hat"]))

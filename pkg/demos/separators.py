# Gromov products, quasigeodesics and separator words in a free group.
from dcgrowth import (QuasiParams, find_separators, gromov_product, is_quasigeodesic,
                      parse_presentation, select_connector)
from dcgrowth.geometry import free_length, large_products
from dcgrowth.words import compact_word

f2 = parse_presentation("< a b | >")
w = f2.word

print(gromov_product(w("abab"), w("aba")))     # 3: they travel together for three letters
print(gromov_product(w("aaa"), w("bbb")))      # 0

print(is_quasigeodesic(w("aA"), QuasiParams(1, 0)))   # False, it backtracks
print(is_quasigeodesic(w("aA"), QuasiParams(1, 2)))   # True once eta absorbs the detour

sep = find_separators(f2, free_length, 3, 0)
print(compact_word(sep.x, "ab"), compact_word(sep.y, "ab"))   # aaa bbb
q = sep.calibrated()
print(q)

# u z v is a quasigeodesic for the first admissible z among x, x^-1, y, y^-1
for u, v in [("ba", "Ab"), ("", ""), ("aaaaa", "aaaaa"), ("abAAA", "BBab")]:
    z = select_connector(w(u), w(v), sep, q)
    print(u or "1", compact_word(z, "ab"), v or "1")

# at most one of the four separator words shares a prefix with any given u
print([compact_word(z, "ab") for z in large_products(w("bbbaa"), sep)])

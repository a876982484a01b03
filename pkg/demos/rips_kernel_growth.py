# A small cancellation group H mapping onto G, and the double cosets of its kernel.
import os

from dcgrowth import build_rips, theorem1_check
from dcgrowth.words import read_presentation

here = os.path.dirname(os.path.abspath(__file__))
g = read_presentation(os.path.join(here, "data", "Z.pres"))

rips = build_rips(g)                 # run length doubles until C'(1/6) is certified
h = rips.result
print(h.generator_names, len(h.relators), "relators")
print("run length", rips.run_length, "max piece", rips.certificate.max_piece_length)
print({k: v for k, v in rips.constants.items() if k.startswith(("c_", "d_"))})
print([len(r) for r in h.relators])

# the kernel N = <t1, t2>: N h N is decided by where h lands in G
rep = theorem1_check(g, R=4)
print("f_G       ", rep["f_G"])
print("gr(H,N,N) ", rep["gr_HNN"])
print("H ball    ", rep["h_ball"])
print("union-find", rep["buffered"].counts, "(upper bounds, finite balls only)")
print("passed", rep["passed"])

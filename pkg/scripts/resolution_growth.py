"""Betti numbers of simple modules over k[x]/(x^n) and the quantum planes QP(q).

Also records the size of the bar complex against the minimal resolution, which
is what the dimension cap (GRADRES_MAXDIM) protects against.
"""
import argparse
import time

from gradres.fixtures import quantum_plane, truncated_polynomial
from gradres.homology import SubalgebraR, bar_resolution
from gradres.modules import regular_module, simples
from gradres.resolution import minimal_resolution, verify
from gradres.smash import twisted_resolution_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=5)
    ap.add_argument("--p", type=int, default=5)
    args = ap.parse_args()
    print("k[x]/(x^n), trivial module: graded shifts of the minimal resolution")
    for n in (2, 3, 4):
        a = truncated_polynomial(n, args.p)
        res = minimal_resolution(simples(a)[0], args.kmax, graded=True)
        shifts = [b for s in res.summands for _, b in s]
        print(f"  n={n}: dims {list(res.dims)} shifts {shifts} ok={verify(res).ok}")
    print("quantum planes k[x]/(x^2) # k[y]/(y^2), y x = q x y")
    for q in range(1, args.p):
        s = quantum_plane(q, args.p)
        t0 = time.perf_counter()
        res = minimal_resolution(simples(s.product)[0], args.kmax, graded=True)
        rep = twisted_resolution_check(s, simples(s.a)[0], regular_module(s.b.algebra), min(args.kmax, 4))
        print(f"  q={q}: dims {list(res.dims)} twisted check {rep.holds} ({time.perf_counter() - t0:.2f}s)")
    print("bar complex versus minimal resolution for k over k[x]/(x^2)")
    a = truncated_polynomial(2, args.p)
    bar = bar_resolution(a, SubalgebraR.ground_field(a), simples(a)[0], min(args.kmax, 8))
    print(f"  bar dims {bar.term_dims()}")
    print(f"  minimal  {list(minimal_resolution(simples(a)[0], min(args.kmax, 8)).dims)}")


if __name__ == "__main__":
    main()

"""Ordinary and relative Tor tables for the small fixtures.

For each algebra, right fixture module N and left module M prints
Tor_k(N, M) from the minimal resolution next to the relative groups over
the ground field and over the span of the vertex idempotents.
"""
import argparse

from gradres.criteria import right_fixture_modules
from gradres.fixtures import a2, a3_zero_relation, d2, d3
from gradres.homology import SubalgebraR, relative_tor, tor
from gradres.modules import forget, regular_module, simples


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=3)
    args = ap.parse_args()
    k = args.kmax
    for alg in (d2(), d3(), a2(), a3_zero_relation()):
        rf = SubalgebraR.ground_field(alg)
        rv = SubalgebraR.idempotent_span(alg)
        # bar terms grow like dim(A)^k; keep the five-dimensional algebra short
        kk = min(k, 2) if alg.dim > 4 else k
        print(f"== {alg.name} (dim {alg.dim}), k = 0..{kk}")
        lefts = [forget(regular_module(alg))] + [forget(s) for s in simples(alg)]
        for n in right_fixture_modules(alg):
            for m in lefts:
                o = tor(n, m, kk).dims
                f = relative_tor(n, m, rf, kk).dims
                v = relative_tor(n, m, rv, kk).dims
                print(f"  Tor({n.name:>6}, {m.name:>4}): ordinary {o}  rel/field {f}  rel/vertices {v}")


if __name__ == "__main__":
    main()

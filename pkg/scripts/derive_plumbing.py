"""Regenerate ``src/m3link/data/plumbing.json``.

The quotient of ``S^3`` by the quaternion group of order ``4n`` is the
boundary of the negative-definite plumbing on the ``D_{n+2}`` tree (every
vertex framed ``-2``), the resolution graph of the ``D_{n+2}`` surface
singularity.  For each shipped order this script builds that matrix, checks
that its cokernel agrees with the abelianization of the group and that the
matrix is negative definite, then writes the file.

    python3 scripts/derive_plumbing.py [--check]
"""

import argparse
import json
import sys
from pathlib import Path

from m3link.abgrp import FiniteAbelianGroup
from m3link.exactlin import Cokernel
from m3link.groupcoh.cup import abelianization_group
from m3link.groupcoh.groups import quaternion_group
from m3link.manifolds.invariants import dynkin_d

OUT = Path(__file__).resolve().parent.parent / "src" / "m3link" / "data" / "plumbing.json"
ORDERS = (8, 16)


def leading_minors_alternate(M):
    # negative definite iff (-1)^k det(leading k x k) > 0 for all k
    rows = M.to_rows()
    from m3link.exactlin import IntMatrix
    for k in range(1, len(rows) + 1):
        sub = IntMatrix.from_rows([r[:k] for r in rows[:k]], cols=k)
        if (-1) ** k * sub.determinant() <= 0:
            return False
    return True


def derive():
    data = {}
    for order in ORDERS:
        n = order // 4
        M = dynkin_d(n + 2)
        coker = Cokernel(M)
        H1, _ = abelianization_group(quaternion_group(order))
        got = FiniteAbelianGroup(coker.invariant_factors)
        if got != H1 or coker.free_rank:
            raise SystemExit(f"Q{order}: plumbing cokernel {got} != abelianization {H1}")
        if not leading_minors_alternate(M):
            raise SystemExit(f"Q{order}: plumbing matrix is not negative definite")
        data[f"Q{order}"] = {
            "graph": f"D{n + 2}",
            "framing": -2,
            "matrix": M.to_rows(),
            "first_homology": list(H1.factors),
        }
    return data


def main(argv=None):
    ap = argparse.ArgumentParser(description="derive quaternion space-form plumbing matrices")
    ap.add_argument("--check", action="store_true", help="compare against the shipped file")
    args = ap.parse_args(argv)
    data = derive()
    text = json.dumps(data, indent=1) + "\n"
    if args.check:
        if OUT.read_text() != text:
            print("plumbing.json is stale", file=sys.stderr)
            return 1
        print("plumbing.json is up to date")
        return 0
    OUT.write_text(text)
    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Print flag Hasse weights for each family as plain text tables."""
import argparse
from dataclasses import dataclass

from zipstrata.strata import classical_zip_datum
from zipstrata.weights import determinant_weight, weight_table


@dataclass
class TableConfig:
    n: int = 4
    q: int = 3


def tables(cfg: TableConfig):
    cases = [("sp_split", None)]
    for r in range(cfg.n, (cfg.n - 1) // 2, -1):
        cases += [("u_inert", (r, cfg.n - r)), ("gl_split", (r, cfg.n - r))]
    for family, sig in cases:
        zd = classical_zip_datum(family, cfg.n, cfg.q, sig)
        head = f"{family} n={cfg.n} q={cfg.q}" + (f" signature={sig}" if sig else "")
        print(head)
        for row in weight_table(zd):
            print(f"  d={row['d']}: {tuple(row['lambda'])}")
        if family != "sp_split":
            print(f"  det: {determinant_weight(zd)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--q", type=int, default=3)
    args = ap.parse_args()
    tables(TableConfig(args.n, args.q))

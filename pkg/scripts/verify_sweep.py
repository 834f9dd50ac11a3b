"""Run every sampled suite over a range of groups and summarise."""
import argparse
import json
import time
from dataclasses import dataclass, field

from zipstrata.realize import SUITES, run_tasks, standard_tasks


@dataclass
class SweepConfig:
    max_n: int = 3
    qs: list = field(default_factory=lambda: [5, 7])
    samples: int = 100
    seed: int = 0
    workers: int = 1
    suites: tuple = SUITES


def families(max_n: int):
    for n in range(1, max_n + 1):
        yield "sp_split", n, None
        for r in range(n, (n - 1) // 2, -1):
            yield "gl_split", n, (r, n - r)
            yield "u_inert", n, (r, n - r)


def sweep(cfg: SweepConfig) -> list:
    rows = []
    for q in cfg.qs:
        for family, n, sig in families(cfg.max_n):
            t0 = time.perf_counter()
            tasks = standard_tasks(family, n, q, sig, cfg.suites, samples=cfg.samples, seed=cfg.seed)
            reports = run_tasks(tasks, cfg.workers)
            rows.append({
                "family": family, "n": n, "signature": sig, "q": q,
                "checks": len(reports), "failed": [r["suite"] for r in reports if not r["pass"]],
                "seconds": round(time.perf_counter() - t0, 3),
            })
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--q", type=int, action="append")
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = ap.parse_args()
    cfg = SweepConfig(args.max_n, args.q or [5, 7], args.samples, args.seed, args.workers)
    rows = sweep(cfg)
    if args.json:
        print(json.dumps(rows, indent=1))
    else:
        for r in rows:
            status = "ok" if not r["failed"] else "FAILED " + ",".join(r["failed"])
            print(f"{r['family']:9s} n={r['n']} sig={r['signature']} q={r['q']}: "
                  f"{r['checks']} checks, {status} ({r['seconds']}s)")

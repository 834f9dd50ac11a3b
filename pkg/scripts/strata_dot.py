"""Write the zip and flag stratum posets of a group as Graphviz files."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from zipstrata.strata import classical_zip_datum, export_poset, flag_orbit_poset, zip_orbit_poset


@dataclass
class DotConfig:
    family: str = "sp_split"
    n: int = 2
    q: int = 3
    r: int | None = None
    s: int | None = None
    outdir: Path = Path("strata_out")


def write(cfg: DotConfig) -> list:
    sig = (cfg.r, cfg.s) if cfg.r is not None else None
    zd = classical_zip_datum(cfg.family, cfg.n, cfg.q, sig)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for kind, poset in (("zip", zip_orbit_poset(zd)), ("flag", flag_orbit_poset(zd))):
        path = cfg.outdir / f"{cfg.family}_{cfg.n}_{kind}.dot"
        path.write_text(export_poset(poset, "dot"))
        written.append((path, len(poset)))
    return written


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="sp_split")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--r", type=int)
    ap.add_argument("--s", type=int)
    ap.add_argument("--outdir", type=Path, default=Path("strata_out"))
    args = ap.parse_args()
    for path, size in write(DotConfig(**vars(args))):
        print(f"{path}: {size} strata")

"""Run the acceptance suite and print only its PASS/FAIL lines."""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", "-s",
         "-p", "no:cacheprovider"],
        capture_output=True, text=True, cwd=ROOT,
    )
    lines = [l for l in proc.stdout.splitlines() if l.startswith("[PASS]") or l.startswith("[FAIL]")]
    print("\n".join(lines))
    print(f"{sum(l.startswith('[PASS]') for l in lines)}/{len(lines)} criteria pass")
    sys.exit(proc.returncode)

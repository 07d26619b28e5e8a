"""Run the acceptance gate and print its PASS/FAIL lines."""

import subprocess
import sys
from pathlib import Path

root = Path(__file__).resolve().parents[1]
proc = subprocess.run(
    [sys.executable, "-m", "pytest", str(root / "tests" / "test_acceptance.py"), "-q"],
    capture_output=True,
    text=True,
)
lines = [ln for ln in proc.stdout.splitlines() if ln.startswith("[PASS]") or ln.startswith("[FAIL]")]
print("\n".join(lines))
print(proc.stdout.strip().splitlines()[-1])
sys.exit(proc.returncode)

"""Run each nldet subcommand with JSON output and validate it against its schema."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

CASES = {
    "rho": ["rho", "--spectral", "causal-set", "--x-log", "1e-2:50:7"],
    "switching": ["switching", "--switching", "sinc", "--x-lin", "-2:2:5"],
    "response": ["response", "--a", "-3", "--lambda", "1e-4", "--mass", "0.5,2", "--switching", "lorentzian"],
    "excess": ["excess", "--a", "-10", "--lambda", "1e-5"],
    "delta": ["delta", "--omega", "-2", "--t-window", "1", "--l-n", "30"],
    "sweep": ["sweep", "--a-log", "-1e3:-1:4", "--lambda-log", "1e-8:1e-6:3", "--spectral", "causal-set"],
    "table1": ["table1", "--switching", "lorentzian", "--spectral", "both"],
    "fig1": ["fig1", "--panel-c-abs-a", "1e-2,1,1e2", "--panel-c-lambdas", "0,1e-8,1e-6"],
    "plan": ["plan", "--atoms", "6e23", "--duration", "10", "--efficiency", "1e-3", "--energy", "11",
             "--mass", "0.1,10"],
}


def main() -> int:
    binary, schema_dir = sys.argv[1], Path(sys.argv[2])
    failures = 0
    for name, args in CASES.items():
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        try:
            jsonschema.validate(json.loads(proc.stdout), schema)
        except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
            print(f"FAIL {name}: {exc}")
            failures += 1
            continue
        print(f"PASS {name}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

"""Runs the CLI on a spread of commands and validates the JSON against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ["mg", "--m", "1", "--k", "1"],
    ["mg", "--m", "2", "--k", "1", "--per-prime"],
    ["mg", "--m", "11", "--k", "1"],
    ["mn", "--n", "1"],
    ["mn", "--n", "4", "--x", "1"],
    ["grid", "--mmax", "2", "--kmax", "4", "--cutoff", "1000"],
    ["constants", "--m", "2", "--k", "3", "--cutoff", "1000"],
    ["constants", "--n", "12", "--cutoff", "1000"],
    ["matrix", "--N", "4", "--n", "2", "--ell", "2", "--e", "3"],
    ["matrix", "--N", "2", "--ell", "2", "--e", "1"],
    ["verify", "oracle", "--pmax", "7"],
    ["verify", "identity", "--nmax", "50"],
    ["verify", "constants", "--nmax", "6", "--mmax", "2", "--kmax", "3"],
    ["verify", "asymptotic", "--samples", "3", "--klo", "100", "--khi", "500"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in CASES:
        proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        if errors:
            print(f"FAIL {' '.join(args)}: {errors[0].message}")
            failures += 1
        else:
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

"""Validate CLI JSON output against schema/expression.schema.json."""
import json
import subprocess
import sys

import jsonschema


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    commands = [
        ["gen-lenard", "--count", "4"],
        ["gen-lenard", "--seed", "p3", "--count", "2", "--allow-integrals"],
        ["gen-lenard", "--seed", "custom", "s^2/2", "--count", "1", "--allow-integrals"],
        ["gen-hierarchy", "--k", "1"],
        ["gen-hierarchy", "--k", "2", "--tau", "1,2,3"],
        ["gen-hierarchy", "--k", "3"],
        ["gen-lax", "--k", "2"],
    ]
    failures = 0
    for args in commands:
        out = subprocess.run([cli, *args], capture_output=True, text=True, check=True).stdout
        errors = list(validator.iter_errors(json.loads(out)))
        status = "ok" if not errors else f"INVALID: {errors[0].message}"
        print(" ".join(args), status)
        failures += bool(errors)
    # a document that must be rejected
    bad = {"terms": [{"s": 0, "jets": {"x": 1}, "coef": "1"}]}
    if validator.is_valid(bad):
        print("schema accepted a malformed jet key")
        failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

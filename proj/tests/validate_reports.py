"""Run every CLI verb with --format json and validate the output against the schema."""

import json
import subprocess
import sys

import jsonschema

INVOCATIONS = [
    ["expand", "--poly", "x2*x0 - 2*x1^2"],
    ["expand", "--poly", "0"],
    ["partner", "--poly", "x1^2", "--n", "3"],
    ["partner", "--poly", "1", "--n", "2"],
    ["member", "--poly", "x2*x0 - 2*x1^2", "--n", "3"],
    ["derive", "--poly", "x3*x0 - 3*x2*x1"],
    ["basis", "--n", "5"],
    ["basis", "--n", "5", "--d", "3", "--source", "solver"],
    ["solve", "--n", "4", "--d", "2"],
    ["solve", "--n", "5", "--d", "2", "--l", "3"],
    ["dims", "--n", "3..6"],
    ["dims", "--n", "4", "--source", "formula"],
    ["dims", "--n", "5", "--d", "3", "--source", "solver"],
    ["identity", "--prop", "cis", "--n", "4..6"],
    ["identity", "--prop", "corollary", "--n", "4..6"],
    ["identity", "--prop", "theorem", "--n", "2..5"],
    ["bijection", "--n", "5", "--mu", "4,1,0,0"],
    ["probe", "--n", "5..6", "--d", "3"],
]


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in INVOCATIONS:
        proc = subprocess.run([cli, *args, "--format", "json"], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        report = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        if report.get("verb") != args[0]:
            errors.append(f"verb field is {report.get('verb')!r}")
        if errors:
            failures += 1
            print(f"FAIL {label}")
            for e in errors[:5]:
                print(f"  {getattr(e, 'message', e)}")
        else:
            print(f"ok   {label}")
    # the schema must also reject malformed reports
    bad = [
        {"verb": "derive", "poly": "x1", "result": 1.5},
        {"verb": "expand", "poly": "x1", "expansion": "-x1/x0^2", "minX0Power": -2,
         "terms": [{"numerator": "x1", "x0Power": -2, "coefficient": -1.0}]},
        {"verb": "solve", "n": 4, "d": 2, "l": None, "candidateCount": 10, "dimension": 6},
        {"verb": "nosuchverb"},
    ]
    for doc in bad:
        if validator.is_valid(doc):
            print(f"FAIL schema accepted {doc}")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

"""Validate k3e JSON reports in a directory against the shipped schemas."""
import json
import pathlib
import sys

try:
    import jsonschema
    from referencing import Registry, Resource
except ImportError:
    print("jsonschema not available; schema validation skipped")
    sys.exit(0)


def main() -> int:
    schemas, outputs = map(pathlib.Path, sys.argv[1:3])
    docs = {p.name: json.loads(p.read_text()) for p in schemas.glob("*.schema.json")}
    registry = Registry().with_resources((name, Resource.from_contents(d)) for name, d in docs.items())
    validator = jsonschema.Draft202012Validator(docs["report.schema.json"], registry=registry)
    checked, bad = 0, 0
    for path in sorted(outputs.glob("out_*.json")):
        text = path.read_text().strip()
        if not text.startswith("{"):
            continue  # empty (error exit) or CSV
        checked += 1
        errors = list(validator.iter_errors(json.loads(text)))
        if errors:
            bad += 1
            print(f"{path.name}: {errors[0].message}")
    print(f"schema check: {checked} reports, {bad} invalid")
    return 1 if bad or checked == 0 else 0


if __name__ == "__main__":
    sys.exit(main())

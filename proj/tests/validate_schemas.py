"""Runs each command once and validates its JSON output against schemas/."""

import json
import pathlib
import shutil
import subprocess
import sys

import jsonschema


def load(path):
    with open(path) as f:
        return json.load(f)


def main():
    binary, schema_dir, config_dir, work = map(pathlib.Path, sys.argv[1:5])
    schemas = {p.name.split(".")[0]: load(p) for p in schema_dir.glob("*.schema.json")}
    for schema in schemas.values():
        jsonschema.Draft202012Validator.check_schema(schema)
    shutil.rmtree(work, ignore_errors=True)
    failures = 0

    def check(doc_path, schema_name):
        nonlocal failures
        try:
            jsonschema.validate(load(doc_path), schemas[schema_name])
            print(f"ok      {doc_path.name} ({schema_name})")
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"INVALID {doc_path} ({schema_name}): {e.message}")

    for config in sorted(config_dir.glob("*.json")):
        check(config, "config")

    runs = [
        ("spectrum", ["-L", "8"], {"spectrum.json": "spectrum"}, 0),
        ("arcs", ["-L", "10"], {"arcs.json": "arcs"}, 0),
        ("eta", ["-L", "15"], {"eta.json": "eta"}, None),
        ("eta-xy", ["-L", "15"], {"eta_xy.json": "eta"}, None),
        ("identities", ["-L", "12"], {"identities.json": "identities"}, 0),
        ("spectrum", ["--lengths", "0", "2", "2"], {"error.json": "error"}, 2),
        ("spectrum", ["-L", "12", "--budget", "3000"],
         {"spectrum.json.partial": "spectrum"}, 4),
    ]
    for k, (command, args, outputs, want) in enumerate(runs):
        out = work / f"{k}_{command}"
        proc = subprocess.run([str(binary), command, "-o", str(out), *args],
                              capture_output=True, text=True)
        if want is not None and proc.returncode != want:
            failures += 1
            print(f"EXIT    {command} {args}: {proc.returncode}, wanted {want}")
        for name, schema_name in outputs.items():
            path = out / name
            if not path.exists():
                failures += 1
                print(f"MISSING {path}")
                continue
            check(path, schema_name)

    accept_report = work / "accept.json"
    proc = subprocess.run(
        [str(binary.parent / "orthospec_accept"), "--only", "2",
         "--report", str(accept_report)], capture_output=True, text=True)
    check(accept_report, "accept")

    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

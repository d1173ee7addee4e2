"""Validate every command's --format json output against the schema printed by --help."""
import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["coeffs", "--potential", "squarewell:V0=0.5,a=2", "--k", "1.3"],
    ["coeffs", "--potential", "sech2:V0=-0.7", "--k", "0.8"],
    ["flux-scan", "--potential", "delta:g=-1", "--n", "10"],
    ["overlap", "--potential", "squarewell:V0=0.5,a=2", "--k1", "1.1", "--k2", "1.7"],
    ["overlap", "--potential", "sech2:V0=-0.7", "--k1", "1.1", "--k2", "1.7"],
    ["delta-term", "--potential", "squarewell:V0=0.5,a=2", "--k1", "1.1", "--k2", "1.7"],
    ["delta-term", "--potential", "free", "--k1", "1.1", "--k2", "1.7"],
    ["delta-surface", "--potential", "squarewell:V0=0.5,a=2", "--n", "5"],
    ["regcompare"],
    ["airy-check", "--d", "0,1"],
    ["wavepacket-norm", "--potential", "squarewell:V0=0.5,a=2", "--n", "32", "--nt", "3"],
    ["radial-delta"],
]


def schema_of(cli, command):
    text = subprocess.run([cli, command, "--help"], check=True, capture_output=True, text=True).stdout
    start = text.index("JSON schema (--format json):")
    return json.loads(text[text.index("{", start):text.rindex("}") + 1])


def main():
    cli, golden = sys.argv[1], sys.argv[2]
    runs = RUNS + [["golden-verify", "--golden-dir", golden]]
    failures = 0
    for args in runs:
        schema = schema_of(cli, args[0])
        jsonschema.Draft7Validator.check_schema(schema)
        proc = subprocess.run([cli, *args, "--format", "json"], capture_output=True, text=True)
        try:
            jsonschema.validate(json.loads(proc.stdout), schema)
            status = "ok" if proc.returncode == 0 else f"exit {proc.returncode}"
        except (ValueError, jsonschema.ValidationError) as e:
            status = f"invalid: {str(e).splitlines()[0]}"
        if status != "ok":
            failures += 1
        print(f"{' '.join(args)}: {status}")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()

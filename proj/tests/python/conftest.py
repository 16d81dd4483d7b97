import json
import os
import pathlib
import shutil
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("RAMPSVM_CLI") or shutil.which("rampsvm")
    if not path:
        candidate = ROOT / "build" / "tools" / "rampsvm"
        path = str(candidate) if candidate.exists() else None
    if not path:
        pytest.skip("rampsvm executable not found (set RAMPSVM_CLI)")

    def run(*args, expect=0):
        proc = subprocess.run([path, *map(str, args)], capture_output=True, text=True)
        assert proc.returncode == expect, proc.stderr
        return proc

    return run


@pytest.fixture(scope="session")
def schema():
    path = os.environ.get("RAMPSVM_SCHEMA", ROOT / "docs" / "report_schema.json")
    with open(path) as f:
        return json.load(f)

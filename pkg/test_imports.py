"""
Import smoke test: every public module loads and the package-level names resolve.

Runs under pytest, or directly with `python test_imports.py`.
"""

import importlib
import sys
from pathlib import Path

# Add backend/src to path
backend_src = Path(__file__).parent / 'backend' / 'src'
sys.path.insert(0, str(backend_src))

MODULES = [
    "contract_lab",
    "contract_lab.errors",
    "contract_lab.special",
    "contract_lab.numerics",
    "contract_lab.core",
    "contract_lab.single_gen",
    "contract_lab.multi_gen",
    "contract_lab.simulation",
    "contract_lab.experiments",
    "contract_lab.cli",
]


def test_modules_import():
    for name in MODULES:
        module = importlib.import_module(name)
        for exported in getattr(module, "__all__", []):
            assert hasattr(module, exported), f"{name}.{exported} missing"


def test_settings_defaults(monkeypatch):
    import contract_lab

    for var in ("CONTRACTLAB_THREADS", "CONTRACTLAB_SEED", "CONTRACTLAB_OUTPUT_DIR", "CONTRACTLAB_LOG_LEVEL"):
        monkeypatch.delenv(var, raising=False)
    settings = contract_lab.reload_settings()
    assert settings.seed == 20240601
    assert settings.threads == 0
    assert settings.log_level == "WARNING"
    contract_lab.reload_settings()


# distribution name -> import name where they differ
IMPORT_NAMES = {"python-dotenv": "dotenv"}


def _declared_packages():
    names = set()
    for line in (Path(__file__).parent / "requirements.txt").read_text().splitlines():
        dist = line.split(">=")[0].split("==")[0].strip()
        if dist:
            names.add(IMPORT_NAMES.get(dist, dist.replace("-", "_")))
    return names


def test_third_party_imports_are_declared():
    import ast

    import pytest

    stdlib = getattr(sys, "stdlib_module_names", None)
    if stdlib is None:
        pytest.skip("needs sys.stdlib_module_names")
    allowed = set(stdlib) | _declared_packages() | {"contract_lab"}
    for path in (backend_src / "contract_lab").rglob("*.py"):
        for node in ast.walk(ast.parse(path.read_text())):
            if isinstance(node, ast.Import):
                roots = [alias.name.split(".")[0] for alias in node.names]
            elif isinstance(node, ast.ImportFrom) and node.level == 0:
                roots = [node.module.split(".")[0]]
            else:
                continue
            for root in roots:
                assert root in allowed, f"{path.name} imports undeclared package {root}"


if __name__ == "__main__":
    print("Testing imports...")
    print("=" * 60)
    try:
        test_modules_import()
        for name in MODULES:
            print(f"   [OK] {name}")
    except Exception as e:
        import traceback
        print(f"[ERROR] IMPORT TEST FAILED: {e}")
        print(traceback.format_exc())
        sys.exit(1)
    print("=" * 60)
    print("[SUCCESS] ALL IMPORTS SUCCESSFUL!")

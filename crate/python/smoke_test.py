"""Loads the compiled extension and exercises each binding once.

    cargo build -p bose-casimir-py --release --features extension-module
    python3 python/smoke_test.py [path/to/libbose_casimir_py.so]
"""

import importlib.util
import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load(path=None):
    if path is None:
        for profile in ("release", "debug"):
            candidate = ROOT / "target" / profile / "libbose_casimir_py.so"
            if candidate.exists():
                path = candidate
                break
        else:
            sys.exit("extension not built; see the module docstring")
    # the import machinery wants the file named after the module
    staged = Path(tempfile.mkdtemp()) / "bose_casimir.so"
    shutil.copy(path, staged)
    spec = importlib.util.spec_from_file_location("bose_casimir", staged)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    bc = load(sys.argv[1] if len(sys.argv) > 1 else None)

    li2 = bc.polylog(2, 1.0, tol=1e-14)
    assert abs(li2 - math.pi**2 / 6) < 1e-10, li2
    catalan = bc.polylog_unit_circle(2, math.pi / 2).imag
    assert abs(catalan - 0.915965594177219) < 1e-12, catalan

    p = bc.PhysicalParams(2.0)
    assert p.regime() == "decaying"
    assert abs(p.critical_field() - math.pi ** (1 / 3)) < 1e-12
    assert abs(p.phi(1.0).real + 3.907) < 1e-3

    closed = bc.potential(p, 1.0, "n4")
    series = bc.potential_series(p, 1.0, "n4")
    assert abs(closed - series) <= 1e-10 * abs(closed)
    force = bc.force(p, 1.0)
    fd = bc.force_fd(p, 1.0)
    assert abs(force - fd) <= 1e-6 * abs(force)

    weak = bc.PhysicalParams(0.02)
    assert weak.regime() == "oscillatory"
    assert isinstance(bc.force(weak, 0.5), complex)
    rows = bc.sweep([weak, p], points=11, term="n5")
    assert len(rows) == 22 and rows[0]["B"] == 0.02 and rows[-1]["d"] == 3.0

    reports = bc.verify(p)
    failures = [r["name"] for r in reports if r["failure"]]
    assert not failures, failures
    assert any(r["erratum"] for r in reports)

    try:
        bc.PhysicalParams(-1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative field accepted")
    try:
        bc.potential(p, 1.0, "n7")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown term accepted")

    print(f"ok: {len(reports)} checks, force at B=2, d=1 is {force.real:.6e}")


if __name__ == "__main__":
    main()

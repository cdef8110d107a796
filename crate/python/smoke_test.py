"""Build the extension, import it and check a few known values.

    python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import subprocess
import sys
import tempfile

root = pathlib.Path(__file__).resolve().parents[1]
subprocess.run(
    ["cargo", "build", "-p", "zmclab-py", "--features", "extension-module"],
    cwd=root,
    check=True,
)
tmp = pathlib.Path(tempfile.mkdtemp())
shutil.copy(root / "target" / "debug" / "libzmclab_py.so", tmp / "zmclab.so")
sys.path.insert(0, str(tmp))

import zmclab  # noqa: E402

# the plane t = y
plane = zmclab.ck_solve([0, 0, 0], [1, 0, 0])
assert plane.terms() == [(0, 1, 1.0)], plane.terms()
assert plane.residual() == 0.0
assert plane.fields(0.1, 0.2)["tag"] == "lightlike"

# a ZMC germ satisfies A = 0 coefficient-wise
g = zmclab.ck_solve([0, 0, 0.5], [1, 0, -0.5, 1], order=10)
assert g.order == 10
assert g.residual() < 1e-12

# φ-admissible germ
h = zmclab.ck_solve([0, 0, 0.5], [1, 0, -0.5, 1], phi=[(0, 0, 1.0)], order=8)
assert h.residual([(0, 0, 1.0)]) < 1e-12

p = zmclab.profile([0, 0, 0, 0], [1, 0, 0, 3])
assert p["mu"] == 0.0 and p["delta"] == 9.0, p
assert p["prediction"] == "changes_type"

names = zmclab.gallery_names()
assert "scherk_timelike2" in names and len(names) == 9
s = zmclab.gallery_surface("scherk_timelike2")
x, y = 0.1, -0.05
assert abs(s.value(x, y) - math.asinh(math.cosh(x) * math.sinh(y))) < 1e-12

for name in names:
    assert zmclab.regression_check(name)["passed"], name

tables = zmclab.approx_tables([0, 0, 0], [1, 0, -1], kmax=4)
ys, a2 = tables[2]
assert len(ys) == len(a2) > 100

b = zmclab.bjorling_helicoid(0.3, 0.0)
assert b["tag"] == "lightlike", b

try:
    zmclab.gallery_surface("nope")
except ValueError:
    pass
else:
    raise AssertionError("expected ValueError")

print("python smoke test passed")

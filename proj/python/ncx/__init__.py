"""Nearly convex sets, their calculus, and subdifferentials of convex functions.

Sets and functions travel as JSON strings (the same documents the ``ncx`` CLI reads);
the helpers here accept dicts as well and decode results.
"""

import json

from . import _ncx
from ._ncx import NcxError

__all__ = ["NcxError", "is_nearly_convex", "nc_equal", "nc_sum", "nc_intersect", "closure",
           "rel_interior", "subdiff", "evaluate", "conjugate", "dom_subdiff", "svg", "run"]


def _enc(x):
    return x if isinstance(x, str) else json.dumps(x)


def _pt(x):
    return x if isinstance(x, str) else ",".join(str(c) for c in x)


def is_nearly_convex(e):
    return json.loads(_ncx.is_nearly_convex(_enc(e)))


def nc_equal(a, b):
    return _ncx.nc_equal(_enc(a), _enc(b))


def nc_sum(a, b):
    return json.loads(_ncx.nc_sum(_enc(a), _enc(b)))


def nc_intersect(*es):
    return json.loads(_ncx.nc_intersect([_enc(e) for e in es]))


def closure(e):
    return json.loads(_ncx.closure(_enc(e)))


def rel_interior(e):
    return json.loads(_ncx.rel_interior(_enc(e)))


def subdiff(f, x):
    return json.loads(_ncx.subdiff(_enc(f), _pt(x)))


def evaluate(f, x):
    return json.loads(_ncx.evaluate(_enc(f), _pt(x)))


def conjugate(f, xs):
    return json.loads(_ncx.conjugate(_enc(f), _pt(xs)))


def dom_subdiff(f):
    return json.loads(_ncx.dom_subdiff(_enc(f)))


def svg(e):
    return _ncx.svg(_enc(e))


def run(command, target="", inputs=(), op="", out="", svg="", grid=0, tol=None, seed=1):
    """Run one CLI command in-process; returns (exit code, list of report records, log text)."""
    code, report, log = _ncx.run(command, target, list(inputs), op, out, svg, grid, tol, seed)
    return code, [json.loads(line) for line in report.splitlines() if line.strip()], log

"""Dirichlet-series symbols, counting functions and composition operators."""

from ._core import *  # noqa: F401,F403
from ._core import __version__

import json as _json
import pathlib as _pathlib


def load_symbol(path, assume_class=False):
    """Build a Symbol from a JSON symbol file ({"c0": ..., "psi": {"2": [re, im]}})."""
    data = _json.loads(_pathlib.Path(path).read_text())
    psi = DirichletPolynomial({int(k): complex(*v) if isinstance(v, list) else complex(v)
                               for k, v in data.get("psi", {}).items()})
    if assume_class or data.get("assume_class", False):
        return Symbol.assume(int(data["c0"]), psi)
    return Symbol.certify(int(data["c0"]), psi)

"""Term kernel: types, hash-consed de Bruijn terms, βη-normalization.

The compiled core (``_ckernel``) is used when it has been built; otherwise the
pure-Python ``_pykernel`` is loaded.  Set ``HINTIKKA_PURE=1`` to force the
fallback.
"""

import os

if os.environ.get("HINTIKKA_PURE", "").strip().lower() not in ("", "0", "false", "no"):
    from . import _pykernel as _core
else:
    try:
        from . import _ckernel as _core
    except ImportError:  # extension not built
        from . import _pykernel as _core

from .types import BASE_I, BASE_O, FUN, I, O, Fun, Type, arrows, eq_type  # noqa: F401

IMPLEMENTATION = _core.IMPLEMENTATION
Term = _core.Term
CONST, FREE, BVAR, LAM, APP = _core.CONST, _core.FREE, _core.BVAR, _core.LAM, _core.APP
FUN_SIDE, ARG_SIDE, UNDER_BINDER = _core.FUN_SIDE, _core.ARG_SIDE, _core.UNDER_BINDER

mk_const = _core.mk_const
mk_free = _core.mk_free
mk_bvar = _core.mk_bvar
mk_lam = _core.mk_lam
mk_app = _core.mk_app
shift = _core.shift
instantiate = _core.instantiate
normalize = _core.normalize
is_normal = _core.is_normal
closed_subterms = _core.closed_subterms
occurrences = _core.occurrences
cache_info = _core.cache_info

from .terms import *  # noqa: E402,F401,F403

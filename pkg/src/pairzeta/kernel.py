"""Selects the polynomial kernel backend at import time.

The compiled Cython kernel is used when available; the pure Python twin is
the fallback.  Set the environment variable ``PAIRZETA_PURE=1`` to force the
pure backend (used by the benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

if os.environ.get("PAIRZETA_PURE") == "1":
    from . import _kernel_py as impl
else:
    try:
        from . import _kernel_cy as impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as impl  # type: ignore[no-redef]

backend_name: str = impl.BACKEND

norm_coeff = impl.norm_coeff
coeff_div = impl.coeff_div
poly_add = impl.poly_add
poly_neg = impl.poly_neg
poly_sub = impl.poly_sub
poly_mul = impl.poly_mul
poly_scale = impl.poly_scale
poly_mul_monomial = impl.poly_mul_monomial
poly_try_divexact = impl.poly_try_divexact
dup_strip = impl.dup_strip
dup_content = impl.dup_content
dup_primitive_pos = impl.dup_primitive_pos
dup_prem = impl.dup_prem
dup_gcd = impl.dup_gcd

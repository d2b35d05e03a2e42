"""Backend selection: compiled extension if available, pure Python otherwise.

Set NEUMANNKIT_BACKEND to "compiled" or "python" to force a choice (forcing
"compiled" raises if the extension was not built).
"""

import os

_requested = os.environ.get("NEUMANNKIT_BACKEND", "auto").lower()

if _requested in ("auto", "compiled", "c"):
    try:
        from . import _core as impl
        BACKEND = "compiled"
    except ImportError:
        if _requested != "auto":
            raise
        from . import _purepy as impl
        BACKEND = "python"
elif _requested in ("python", "pure", "purepy"):
    from . import _purepy as impl
    BACKEND = "python"
else:
    raise ValueError(
        "NEUMANNKIT_BACKEND must be 'auto', 'compiled' or 'python', got %r"
        % _requested)

"""Dense full-duplex CSMA/CA WLAN model and optimizer.

Thin wrapper over the compiled core: closed-form Matern contention,
spatial density of throughput, and the joint association / PCS threshold
optimizer, plus the seeded experiment harness.
"""

from _densewlan import *  # noqa: F401,F403
from _densewlan import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]

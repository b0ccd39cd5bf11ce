"""Free-group neighbourhood systems with machine-checkable certificates."""

try:
    from ._assgp import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # development layout: extension built by plain CMake
    from _assgp import *  # noqa: F401,F403

__all__ = [
    "Engine",
    "System",
    "Chain",
    "build_chain",
    "load_run",
    "lemma_suites",
    "EngineError",
]

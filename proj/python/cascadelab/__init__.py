"""Cascade workbench: DC-flow cascade simulation, pairwise interaction
learning, Glauber reconstruction, clustering, and prediction scoring.

The heavy lifting lives in the compiled extension; this package just
re-exports it under a stable name.
"""

try:
    from ._cascadelab import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _cascadelab import *  # noqa: F401,F403  (in-tree build, .so on sys.path)

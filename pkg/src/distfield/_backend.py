"""Pick the kernel implementation once, at import.

The compiled extension is preferred.  Set ``DISTFIELD_BACKEND=python``
to force the pure-Python kernels.  :func:`use` swaps the backend for a
block of code (the backend benchmark relies on it).
"""
import contextlib
import importlib
import os

from . import _pykernels


def load(name: str = "auto"):
    if name == "python":
        return _pykernels
    if name not in ("auto", "compiled"):
        raise ValueError(f"unknown backend {name!r}")
    try:
        return importlib.import_module("distfield._kernels")
    except ImportError:
        if name == "compiled":
            raise
        return _pykernels


def available() -> list[str]:
    names = ["python"]
    try:
        load("compiled")
    except ImportError:
        return names
    return ["compiled"] + names


kernels = load(os.environ.get("DISTFIELD_BACKEND", "auto"))


def name() -> str:
    return kernels.NAME


@contextlib.contextmanager
def use(which: str):
    global kernels
    saved = kernels
    kernels = load(which)
    try:
        yield kernels
    finally:
        kernels = saved

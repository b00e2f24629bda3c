"""Information-regret tradeoff for joint estimation of two signal quadratures."""
__version__ = "0.1.0"

from .errors import IrtrError  # noqa: E402

__all__ = ["IrtrError", "__version__"]

"""hopfext: exact verification of Hopf-Galois extensions and their Ext algebras.

Structure constants in, certificates out. All arithmetic is exact (Q or F_p);
every verdict carries the truncation window it was certified in.
"""

from .backend import BACKEND
from .fields import GF, QQ, Field, parse_field

__version__ = "0.1.0"

__all__ = ["BACKEND", "Field", "QQ", "GF", "parse_field", "__version__"]

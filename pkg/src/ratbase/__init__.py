"""Rational base numeration: representations, transducers, and language analyses."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .numeration import (  # noqa: F401
    Base,
    DigitWord,
    QValue,
    evaluate,
    in_value_set,
    parse_qvalue,
    represent_integer,
    represent_value,
    validate_base,
)
from .transducers import SeqRightTransducer, add, build_converter, build_incrementer, run  # noqa: F401

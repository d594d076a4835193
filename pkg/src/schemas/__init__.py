from .chain import CellSchema, ChainSchema
from .integrand import IntegrandSchema, TableAtomSchema
from .measure import AtomSchema, MeasureSchema
from .rational import parse_rational
from .report import LPAtomReport, LPReport, RunReport

__all__ = [
    "AtomSchema",
    "MeasureSchema",
    "CellSchema",
    "ChainSchema",
    "IntegrandSchema",
    "TableAtomSchema",
    "RunReport",
    "LPReport",
    "LPAtomReport",
    "parse_rational",
]

from .structure import StructureSkill
from .rounding import RoundingSkill
from .report import ReportSkill

__all__ = [
    'StructureSkill',
    'RoundingSkill',
    'ReportSkill',
]

from .checker import check_comparison, check_disk_conjecture
from .counterexample import build_counterexample, doubled_counterexample
from .generator import generate_comparison_pair

__all__ = [
    'check_comparison',
    'check_disk_conjecture',
    'build_counterexample',
    'doubled_counterexample',
    'generate_comparison_pair',
]

from .coordinates import from_u, to_u
from .energy import energy_gradient, face_energy, line_integral, total_energy
from .jacobian import angle_jacobian, assembled_jacobian
from .solver import solve_prescribed_curvature

__all__ = [
    'from_u',
    'to_u',
    'energy_gradient',
    'face_energy',
    'line_integral',
    'total_energy',
    'angle_jacobian',
    'assembled_jacobian',
    'solve_prescribed_curvature',
]

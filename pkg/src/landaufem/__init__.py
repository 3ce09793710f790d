"""Structure-preserving Galerkin solver for the 2-D Landau collision operator.

Mass, momentum and kinetic energy are conserved to machine precision and
entropy production is monotone, by construction of the discrete bracket and
the discrete-gradient time integrator.
"""

from .errors import (AssemblyError, CapabilityError, ConfigurationError,
                     DimensionError, LandauFemError, ModelDomainError,
                     SolverFailure, StateError, StepperFailure)
from .mesh import VelocityMesh, QuadratureRule, build_mesh, build_quadrature
from .fem import (DistributionState, FunctionSpace, MassMatrix,
                  MonomialCoefficients, assemble_mass_matrix, build_space,
                  eval_at_quad, interpolate_monomials, lift_gradient,
                  mass_norm, tabulate)

__version__ = "0.1.0"

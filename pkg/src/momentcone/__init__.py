"""Homotopy invariants of contact toric manifolds of Reeb type, computed from
the integer facet normals of their moment cones."""

from momentcone.cone_model import ConeSpec, ValidationReport, reeb_vector, validate
from momentcone.face_lattice import (
    Arrangement,
    Face,
    FaceLattice,
    GoodnessReport,
    Ray,
    arrangement_U,
    check_good,
    enumerate_faces,
    extreme_rays,
)
from momentcone.homotopy import HomotopyReport, compute_pi1, compute_pi2_rank, consistency_check
from momentcone.lattice_algebra import (
    FinAbGroup,
    IntMatrix,
    SmithDecomposition,
    cokernel,
    is_direct_summand,
    kernel_basis,
    minor_gcd,
    snf,
)
from momentcone.report import analyze
from momentcone.witness import MomentWitness, membership_check, relint_point, witness_for_face

__version__ = "0.1.0"

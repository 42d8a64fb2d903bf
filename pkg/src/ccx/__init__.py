"""Exact indices, Grothendieck-group maps and cluster characters for 2-Calabi-Yau Frobenius module categories."""

from .algebra import Algebra, Quiver, build_algebra, cartan_matrix, euler_matrix, is_self_injective, load_algebra
from .character import CharacterEngine
from .fixtures import Fixture, FixtureError, RunConfig, bundled_fixture, load_fixture
from .frobenius import FrobeniusCategory, StableHom, suspend, desuspend
from .grassmann import GrassmannQuery, enumerate_submodules, euler_char
from .laurent import Basis, K0Vector, LaurentPoly, format_laurent, parse_laurent
from .modules import Module, direct_sum, ext1_dim, hom_dim, module_from_arrows, projective, simple
from .tilting import TiltingData, verify_cluster_tilting

__version__ = "0.1.0"

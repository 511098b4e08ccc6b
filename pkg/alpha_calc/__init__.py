"""
alpha-calc
"""

from importlib.metadata import version

from .alpha import AlphaResult as AlphaResult
from .alpha import IlpProblem as IlpProblem
from .alpha import alpha_k as alpha_k
from .alpha import alpha_sequence as alpha_sequence
from .alpha import build_constraints as build_constraints
from .alpha import closed_form as closed_form
from .alpha import ilp_max as ilp_max
from .alpha import lp_max as lp_max
from .alpha import oracle_alpha_k as oracle_alpha_k
from .alpha import verify_certificate as verify_certificate
from .ample import AmplenessReport as AmplenessReport
from .ample import nakai_moishezon_check as nakai_moishezon_check
from .builder import BlowUpSpec as BlowUpSpec
from .builder import SurfaceModel as SurfaceModel
from .builder import add_curve as add_curve
from .builder import blow_up as blow_up
from .builder import hirzebruch as hirzebruch
from .builder import paper_surface as paper_surface
from .lattice import DivisorClass as DivisorClass
from .lattice import IntersectionForm as IntersectionForm
from .lattice import pairing as pairing
from .lattice import smith_normal_form as smith_normal_form
from .lattice import solve_integer_system as solve_integer_system
from .lct import EffectiveDivisor as EffectiveDivisor
from .lct import LctValue as LctValue
from .lct import lct_snc as lct_snc

__version__ = version("alpha-calc")

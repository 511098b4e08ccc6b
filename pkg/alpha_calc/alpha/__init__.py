from .bnb import IlpSolution as IlpSolution
from .bnb import derive_box as derive_box
from .bnb import ilp_max as ilp_max
from .invariant import DEFAULT_K_RANGE as DEFAULT_K_RANGE
from .invariant import AlphaResult as AlphaResult
from .invariant import CertificateCheck as CertificateCheck
from .invariant import alpha_k as alpha_k
from .invariant import alpha_sequence as alpha_sequence
from .invariant import closed_form as closed_form
from .invariant import infimum as infimum
from .invariant import paper_certificate as paper_certificate
from .invariant import verify_certificate as verify_certificate
from .oracle import ORACLE_MAX_K as ORACLE_MAX_K
from .oracle import oracle_alpha_k as oracle_alpha_k
from .problem import IlpProblem as IlpProblem
from .problem import build_constraints as build_constraints
from .simplex import LpSolution as LpSolution
from .simplex import LpStatus as LpStatus
from .simplex import lp_max as lp_max

"""Anisotropic two-propagator Feynman integrals and the hypergeometric machinery behind them."""
from .errors import DomainError, LifshitzError, NoConvergence, PoleError, PrecisionLoss, QuadratureError
from .hyper_core import HyperParams, SeriesResult, eval_2f1, eval_pfq, gamma_real, pochhammer
from .multivar_hyper import eval_f1, eval_f2, eval_f4, eval_h4, h4_single_series
from .complex_expansion import CartesianArg, re_im_polar
from .feynman import (IntegralPoint, MassPair, c1_constant, i1m, i1m_hat, i1m_via_h4, inner_j1,
                      inner_j2, inner_j3, inner_jd_f1, inner_jd_kss, inner_jd_zero_mass)
from .oracle import QuadratureSpec, quad_i1m, quad_idm_m1, quad_jd

__version__ = "0.1.0"

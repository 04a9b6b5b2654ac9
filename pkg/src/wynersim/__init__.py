"""Cooperative multicell MISO beamforming simulator with RVQ limited feedback."""

__version__ = "0.1.0"

from .bitalloc import (BitSplit, brute_force_split, delta_tilde, optimal_split,
                       t_d_bound, t_i_bound, total_bound_general)
from .channel import (CellParams, ChannelSet, RandomDbAlpha, Topology,
                      UniformAlpha, alpha_profile, generate)
from .errors import (BudgetTooLarge, ConfigError, DegenerateChannel, DomainError,
                     RankDeficient, ShapeError, SimError)
from .experiments import ExperimentSpec, ResultTable, run
from .feedback import (BaseStationView, Codebook, QuantizedCsi, draw_codebook,
                       exchange, gebf_limited, quantize, user_feedback)
from .numerics import (beta_fn, expected_log2_cos2, expected_sin2_min,
                       rank1_gen_eigvec)

__all__ = [name for name in dir() if not name.startswith("_")]

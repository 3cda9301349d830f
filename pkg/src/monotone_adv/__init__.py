"""Learning under monotone adversaries: constructions, pipeline, learners and experiments."""
from .domain import (
    Dataset,
    Domain,
    HypothesisClass,
    build_class,
    build_class_majority_lb,
    build_class_majority_lb_rand,
    build_class_oig_lb,
    vc_dimension,
)
from .learners import majority_vote, scheme_bagging, scheme_hanneke, scheme_majority_of_three
from .oig import OIGPredictor, build_oig, loo_error_sum, oig_predict, orient_min_max_outdegree
from .pipeline import Distribution, run_adaptive, run_oblivious

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "Distribution",
    "Domain",
    "HypothesisClass",
    "OIGPredictor",
    "build_class",
    "build_class_majority_lb",
    "build_class_majority_lb_rand",
    "build_class_oig_lb",
    "build_oig",
    "loo_error_sum",
    "majority_vote",
    "oig_predict",
    "orient_min_max_outdegree",
    "run_adaptive",
    "run_oblivious",
    "scheme_bagging",
    "scheme_hanneke",
    "scheme_majority_of_three",
    "vc_dimension",
]

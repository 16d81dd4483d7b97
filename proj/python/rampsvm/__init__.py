"""Ramp-loss SVM toolkit.

Thin wrapper over the compiled ``_rampsvm`` module. Functions that return
structured results in C++ produce the same JSON as the command-line tool;
here they are decoded into plain dicts.
"""

import json

from . import _rampsvm
from ._rampsvm import (
    NumericalError,
    Problem,
    counterexample_data,
    estimate_multiplier,
    gen_synthetic,
    global_oracle,
    objective,
    predict,
    prox_oracle,
    prox_scalar,
    prox_vector,
    ramp_loss,
    ramp_loss_sum,
    ramp_subdiff,
    reconstruct_w,
)

__version__ = _rampsvm.__version__


def _decoded(fn):
    def wrapper(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__.removesuffix("_json")
    wrapper.__doc__ = fn.__doc__
    return wrapper


check_pstationary = _decoded(_rampsvm.check_pstationary_json)
check_kkt = _decoded(_rampsvm.check_kkt_json)
grade_point = _decoded(_rampsvm.grade_point_json)
train = _decoded(_rampsvm.train_json)
extract_support = _decoded(_rampsvm.extract_support_json)
verify_support_margins = _decoded(_rampsvm.verify_support_margins_json)
counterexample = _decoded(_rampsvm.counterexample_json)
prox_eval = _decoded(_rampsvm.prox_eval_json)

__all__ = [
    "NumericalError",
    "Problem",
    "check_kkt",
    "check_pstationary",
    "counterexample",
    "counterexample_data",
    "estimate_multiplier",
    "extract_support",
    "gen_synthetic",
    "global_oracle",
    "grade_point",
    "objective",
    "predict",
    "prox_eval",
    "prox_oracle",
    "prox_scalar",
    "prox_vector",
    "ramp_loss",
    "ramp_loss_sum",
    "ramp_subdiff",
    "reconstruct_w",
    "train",
    "verify_support_margins",
]

from src.spectral.autocorrelation import (
    autocorrelation,
    numeric_collision_check,
    power_spectrum,
    random_alphabet,
    transform,
)
from src.spectral.forms import (
    autocorr_form,
    collision_ratios,
    distance_view,
    evaluate,
    forms_equal,
    forms_equal_sparse,
)

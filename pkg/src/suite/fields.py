"""Field selector: turns the ``field`` entry of a RunConfig into a ScalarField."""

from src.core.errors import DomainError
from src.strips import StripProfile, constant_profile, load_profile_table, strip_field
from src.suite.state import RunConfig
from src.surfaces import cantor_field, cantor_limit_profile, cantor_profile, cone_eps, cone_field
from src.variation import ScalarField, linear_t_field, plane_field, square_t_field


def select_field(config: RunConfig) -> ScalarField:
    match config.field:
        case "plane":
            return plane_field(config.a, config.b)
        case "cone":
            return cone_field()
        case "cone_eps":
            return cone_eps(config.eps)[0]
        case "cantor":
            return cantor_field(config.n)
        case "cantor_limit":
            return cantor_field(None)
        case "t":
            return linear_t_field()
        case "t2":
            return square_t_field()
        case "strip":
            return strip_field(load_profile_table(config.profile))
    raise DomainError(f"unknown field selector {config.field!r}")


def select_profile(config: RunConfig) -> StripProfile | None:
    """The strip profile behind the selected field, or None for non-strip fields.

    A plane with b = 0 is the strip of the constant profile a.
    """
    match config.field:
        case "cone_eps":
            return cone_eps(config.eps)[1]
        case "cantor":
            return cantor_limit_profile() if config.n is None else cantor_profile(config.n)
        case "cantor_limit":
            return cantor_limit_profile()
        case "strip":
            return load_profile_table(config.profile)
        case "plane" if config.b == 0.0:
            return constant_profile(config.a)
    return None

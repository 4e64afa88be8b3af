import logging
from typing import Callable, Dict

from importlib_metadata import entry_points

from ..core.detection import BUILTIN_SCORERS, DEFAULT_FLOOR, FeatureScorer
from ..exceptions import ConfigError

SCORER_GROUP = "weaksig.scorers"

ScorerFactory = Callable[..., FeatureScorer]


def discover_scorers() -> Dict[str, ScorerFactory]:
    """
    Discover feature scorers registered under the weaksig.scorers entry-point group.
    Broken plugins are logged and skipped.

    Returns:
        dict: Mapping of scorer name to a factory taking the noise floor.
    """
    scorers: Dict[str, ScorerFactory] = {}
    try:
        for entry_point in entry_points(group=SCORER_GROUP):
            try:
                scorers[entry_point.name] = entry_point.load()
                logging.info(f"Loaded scorer plugin: {entry_point.name} from {entry_point.module}")
            except Exception as e:
                logging.warning(
                    f"Failed to load scorer plugin {entry_point.name} "
                    f"from {entry_point.module}: {e}"
                )
    except Exception as e:
        logging.warning(f"Failed to discover scorer plugins: {e}")
    return scorers


def available_scorers() -> Dict[str, ScorerFactory]:
    """Built-in scorers plus discovered plugins; built-in names win."""
    return {**discover_scorers(), **BUILTIN_SCORERS}


def get_scorer(name: str, floor: float = DEFAULT_FLOOR) -> FeatureScorer:
    """Instantiate the named scorer with the given noise floor."""
    scorers = available_scorers()
    if name not in scorers:
        raise ConfigError(
            f"Unknown scorer: {name}", details=f"available: {', '.join(sorted(scorers))}"
        )
    return scorers[name](floor)

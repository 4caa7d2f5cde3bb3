import logging
from dataclasses import dataclass
from pathlib import Path

from ruamel.yaml import YAML

from wyko_tau.settings import CONFIG_DIR
from wyko_tau.sweep import STDOUT, SweepConfig

logger = logging.getLogger(__name__)

FIGURE_DEFINITIONS_DIR = CONFIG_DIR / "figures"
TEST_FIGURE_DEFINITIONS_DIR = CONFIG_DIR / "test"


@dataclass(frozen=True)
class SweepPreset:
    """A named sweep reproducing one figure, read from a YAML definition."""

    name: str
    mode: str
    grid_size: int
    description: str = ""
    plot: tuple = ()

    def to_config(self, output_path: str = STDOUT) -> SweepConfig:
        return SweepConfig(self.grid_size, self.mode, output_path)


def load_from_yaml(yaml_path: Path) -> dict:
    yaml = YAML(typ="safe")
    with open(yaml_path) as f:
        return yaml.load(f) or {}


def init(yaml_dir: Path = FIGURE_DEFINITIONS_DIR) -> dict[str, SweepPreset]:
    """Build presets from every YAML file in ``yaml_dir``, keyed by name."""
    presets = {}
    for yaml_file in sorted(Path(yaml_dir).glob("*.yml")):
        definitions = load_from_yaml(yaml_file)
        for name, params in definitions.items():
            if name in presets:
                logger.warning(f"Duplicate sweep preset {name} in {yaml_file.name}")
            try:
                preset = SweepPreset(
                    name=name,
                    mode=params["mode"],
                    grid_size=int(params["grid_size"]),
                    description=params.get("description", ""),
                    plot=tuple(params.get("plot", ())),
                )
                preset.to_config()  # validates mode and grid size
            except (KeyError, TypeError, ValueError) as error:
                logger.error(f"Unable to load sweep preset {name}: {error}")
                err_msg = f"Invalid sweep preset {name} in {yaml_file}"
                raise ValueError(err_msg) from error
            presets[name] = preset
            logger.debug(f"Loaded sweep preset {name} from {yaml_file.name}")
    return presets


logger.debug("wyko-tau: discovering sweep presets")
presets = init(FIGURE_DEFINITIONS_DIR)
logger.debug(f"wyko-tau: found {len(presets)} sweep presets")
test_presets = init(TEST_FIGURE_DEFINITIONS_DIR)
logger.debug(f"wyko-tau: found {len(test_presets)} test sweep presets")

"""
Configuration for the Semichu tensor workbench
===============================================

Enumeration caps, logging and output settings. Every value can be
overridden with an environment variable (or a ``.env`` file next to the
working directory).
"""
import os
from pathlib import Path
from typing import Dict, List, Optional

from dotenv import load_dotenv

load_dotenv()

# Package directory - fixtures live next to the code unless overridden
BASE_DIR = Path(__file__).parent
FIXTURE_DIR = Path(os.environ.get('SEMICHU_FIXTURE_DIR', BASE_DIR / 'fixtures'))

# Search-space caps
CAPS = {
    'structural_elements': int(os.environ.get('SEMICHU_MAX_ELEMENTS', 64)),
    'effects': int(os.environ.get('SEMICHU_MAX_EFFECTS', 512)),
    'minimal_pairs': int(os.environ.get('SEMICHU_MAX_PAIRS', 36)),
    'effect_grid': int(os.environ.get('SEMICHU_MAX_EFFECT_GRID', 24)),
    'criterion_warning': 20,
    'bifilter_minimality_pairs': 16,
    'morphism_elements': int(os.environ.get('SEMICHU_MAX_MORPHISM_ELEMENTS', 5)),
    'generator_elements': 7,
}

LOG_CONFIG = {
    'level': os.environ.get('SEMICHU_LOG_LEVEL', 'INFO'),
    'format': '%(asctime)s - %(levelname)s - %(message)s',
}

OUTPUT_CONFIG = {
    'schema_version': '1.0',
    'json_indent': 2,
    'progress': os.environ.get('SEMICHU_PROGRESS', '0').lower() in ('1', 'true', 'yes'),
}

# Caps overridden for the current process (set by the CLI --max-size option)
_CAP_OVERRIDES: Dict[str, int] = {}


def get_cap(name: str, override: Optional[int] = None) -> int:
    """
    Effective value of a cap

    Args:
        name: Key in CAPS
        override: Explicit value taking precedence over everything else

    Returns:
        The cap as an int
    """
    if override is not None:
        return int(override)
    if name in _CAP_OVERRIDES:
        return _CAP_OVERRIDES[name]
    return CAPS[name]


def override_caps(value: Optional[int]) -> None:
    """Override every enumeration cap for this process (``None`` clears)."""
    _CAP_OVERRIDES.clear()
    if value is not None:
        for key in ('structural_elements', 'effects', 'minimal_pairs',
                    'effect_grid', 'morphism_elements'):
            _CAP_OVERRIDES[key] = int(value)


def get_fixture_files(pattern: str = '*.json') -> List[Path]:
    """
    Get list of shipped fixture documents

    Args:
        pattern: Glob pattern inside the fixture directory

    Returns:
        Sorted list of file paths
    """
    if not FIXTURE_DIR.exists():
        return []
    return sorted(FIXTURE_DIR.glob(pattern))

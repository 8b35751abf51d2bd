"""Bundled benchmark instances and the table of known optimal lengths.

A small set of classic TSPLIB instances ships with the package; each
bundled file was verified by solving it to the published optimal length
before inclusion, and a matching ``.opt.tour`` file holds one optimal
tour.  Additional instances can be dropped into a directory named by
the ``CGOAS_TSPLIB_DIR`` environment variable (or passed as explicit
paths to the CLI); the optima table below covers the common literature
instances so RPD works out of the box for them.
"""

from __future__ import annotations

import os
from importlib import resources

import numpy as np

from .tsplib import TspInstance, parse_tsplib_file, parse_opt_tour_file

ENV_TSPLIB_DIR = "CGOAS_TSPLIB_DIR"

# Known optimal tour lengths for classic symmetric TSPLIB instances.
OPTIMAL_LENGTHS: dict[str, int] = {
    "eil51": 426,
    "berlin52": 7542,
    "st70": 675,
    "eil76": 538,
    "pr76": 108159,
    "rat99": 1211,
    "kroA100": 21282,
    "rd100": 7910,
    "eil101": 629,
    "lin105": 14379,
    "ch150": 6528,
    "d198": 15780,
    "kroA200": 29368,
    "tsp225": 3916,
    "pr226": 80369,
    "pr264": 49135,
    "a280": 2579,
    "pr299": 48191,
    "lin318": 42029,
    "rd400": 15281,
    "fl417": 11861,
    "pr439": 107217,
    "pcb442": 50778,
    "att532": 27686,
    "rat575": 6773,
    "rat783": 8806,
    "pr1002": 259045,
    "pcb1173": 56892,
    "d1291": 50801,
    "fl1577": 22249,
}

BUNDLED_INSTANCES: tuple[str, ...] = ("eil51", "berlin52", "eil76", "kroA100")


def optimal_length(name: str) -> int | None:
    """Known optimum for an instance name, or None."""
    return OPTIMAL_LENGTHS.get(name)


def _data_dir():
    return resources.files("cgoas") / "data"


def bundled_instance_path(name: str) -> str | None:
    """Filesystem path of a bundled instance, or None if not bundled."""
    candidate = _data_dir() / f"{name}.tsp"
    return str(candidate) if candidate.is_file() else None


def find_instance(name_or_path: str) -> str:
    """Resolve an instance argument to a readable .tsp file path.

    Tries, in order: an explicit path, the bundled data directory, and
    ``$CGOAS_TSPLIB_DIR``.  Raises FileNotFoundError with the searched
    locations otherwise.
    """
    if os.path.isfile(name_or_path):
        return name_or_path
    name = os.path.basename(name_or_path)
    if name.endswith(".tsp"):
        name = name[: -len(".tsp")]
    bundled = bundled_instance_path(name)
    if bundled:
        return bundled
    searched = [name_or_path, f"<bundled>/{name}.tsp"]
    env_dir = os.environ.get(ENV_TSPLIB_DIR)
    if env_dir:
        candidate = os.path.join(env_dir, f"{name}.tsp")
        searched.append(candidate)
        if os.path.isfile(candidate):
            return candidate
    raise FileNotFoundError(
        f"instance {name_or_path!r} not found; searched: {', '.join(searched)}"
    )


def load_instance(name_or_path: str) -> TspInstance:
    """Parse an instance by bundled name, path, or $CGOAS_TSPLIB_DIR entry."""
    return parse_tsplib_file(find_instance(name_or_path))


def load_optimal_tour(name: str) -> np.ndarray | None:
    """The bundled optimal tour of a bundled instance, or None."""
    candidate = _data_dir() / f"{name}.opt.tour"
    if candidate.is_file():
        return parse_opt_tour_file(str(candidate))
    return None

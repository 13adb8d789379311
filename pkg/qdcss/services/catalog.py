"""Named reference codes, stored as code-spec documents."""

from typing import Any, Dict, List

from qdcss.exceptions import SpecValidationError
from qdcss.schemas.code_spec import CodeSpecDocument, parse_code_spec

BICYCLE_SEED = 2024

_HEURISTIC_SUPPORTS = [[4, 18, 51, 65, 93], [6, 61, 78, 87, 101], [19, 34, 58, 67, 83], [2, 54, 86, 105, 114]]

_CATALOG: Dict[str, Dict[str, Any]] = {
    # Construction A, w=3, u=8
    "CA_128_32": {"construction": "A", "ell": 4, "w": 3, "u": 8, "z0": 0, "z": [13, 1, 10, 5]},
    "CA_256_64": {"construction": "A", "ell": 5, "w": 3, "u": 8, "z0": 0, "z": [24, 7, 10, 15]},
    "CA_512_128": {"construction": "A", "ell": 6, "w": 3, "u": 8, "z0": 10, "z": [20, 34, 47, 60]},
    "CA_1024_256": {"construction": "A", "ell": 7, "w": 3, "u": 8, "z0": 0, "z": [127, 120, 118, 45]},
    # Construction B, v=3, u=4
    "CB3_128_64": {
        "construction": "B", "ell": 5, "u": 4, "v": 3,
        "supports": [[3, 11, 26], [0, 16, 27], [6, 15, 18], [14, 20, 24]],
    },
    "CB3_256_128": {
        "construction": "B", "ell": 6, "u": 4, "v": 3,
        "supports": [[7, 23, 52], [1, 32, 54], [13, 30, 40], [10, 36, 58]],
    },
    "CB3_1024_512": {
        "construction": "B", "ell": 8, "u": 4, "v": 3,
        "supports": [[107, 134, 148], [104, 187, 203], [51, 55, 112], [129, 187, 193]],
    },
    # Construction B, v=5, u=4, ell=7: support design variants
    "CB5_NU": {  # support 1 is support 0 XOR-translated by 4: identical difference sets
        "construction": "B", "ell": 7, "u": 4, "v": 5,
        "supports": [[3, 17, 25, 42, 56], [7, 21, 29, 46, 60], [12, 26, 34, 51, 65], [14, 28, 36, 53, 67]],
    },
    "CB5_C": {  # all indices inside 96..127
        "construction": "B", "ell": 7, "u": 4, "v": 5,
        "supports": [[96, 98, 101, 104, 107], [110, 113, 116, 119, 122], [97, 100, 103, 106, 109],
                     [102, 114, 117, 120, 123]],
    },
    "CB5_RO1": {
        "construction": "B", "ell": 7, "u": 4, "v": 5,
        "supports": [[2, 13, 27, 46, 59], [4, 15, 29, 48, 61], [6, 17, 31, 50, 63], [8, 19, 33, 52, 65]],
    },
    "CB5_RO2": {
        "construction": "B", "ell": 7, "u": 4, "v": 5,
        "supports": [[15, 40, 74, 78, 96], [20, 30, 33, 91, 99], [18, 59, 69, 86, 122], [2, 22, 60, 94, 105]],
    },
    "CB5_H": {"construction": "B", "ell": 7, "u": 4, "v": 5, "supports": _HEURISTIC_SUPPORTS},
    "CB5_1024_512": {
        "construction": "B", "ell": 8, "u": 4, "v": 5,
        "supports": [[8, 37, 102, 130, 187], [12, 122, 156, 174, 202], [38, 69, 117, 144, 166],
                     [24, 82, 133, 196, 247]],
    },
    "CB7_1024_512": {
        "construction": "B", "ell": 8, "u": 4, "v": 7,
        "supports": [[5, 34, 65, 123, 141, 165, 206], [0, 74, 117, 137, 173, 221, 241],
                     [4, 46, 70, 101, 145, 215, 247], [30, 40, 91, 156, 174, 193, 252]],
    },
    # bicycle baselines; BIC_256_88 matches the actual k_q of CA_256_64
    "BIC_256_64": {"construction": "bicycle", "n": 256, "row_weight": 8, "k": 64, "seed": BICYCLE_SEED},
    "BIC_256_88": {"construction": "bicycle", "n": 256, "row_weight": 8, "k": 88, "seed": BICYCLE_SEED},
    "BIC_512_128": {"construction": "bicycle", "n": 512, "row_weight": 8, "k": 128, "seed": BICYCLE_SEED},
    "BIC_1024_256": {"construction": "bicycle", "n": 1024, "row_weight": 8, "k": 256, "seed": BICYCLE_SEED},
}


def list_codes() -> List[str]:
    return sorted(_CATALOG)


def get_code_spec(name: str) -> CodeSpecDocument:
    """Catalog entry as a validated document named after its key.

    Raises:
        SpecValidationError: If the name is unknown.
    """
    if name not in _CATALOG:
        raise SpecValidationError(
            f"unknown code {name!r}; available: {', '.join(list_codes())}",
            [{"field": "code", "message": "unknown catalog name"}],
        )
    return parse_code_spec({**_CATALOG[name], "name": name})

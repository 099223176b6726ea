import numpy as np
from beartype.typing import Dict, Tuple
from jaxtyping import Int

# a word is a tuple of letter names; inverse letters carry a trailing apostrophe
Word = Tuple[str, ...]
# canonical vertex-group element: reduced word (free kind) or shortlex-least word (finite kind)
Element = Tuple[str, ...]

CAYLEY_TABLE = Int[np.ndarray, "Order Order"]
INDEX_ARRAY = Int[np.ndarray, "Order"]

DISTANCE_MAP = Dict[Element, int]

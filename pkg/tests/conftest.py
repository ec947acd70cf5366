import numpy as np
import pytest

from kdwitness import SPIN1
from kdwitness.linalg import projector


@pytest.fixture(scope="session")
def spin1_projectors():
    return [projector(s) for s in SPIN1.min_uncertainty_states]


def label_index(name: str) -> int:
    return SPIN1.state_labels.index(name)


def state(name: str) -> np.ndarray:
    return SPIN1.min_uncertainty_states[label_index(name)]

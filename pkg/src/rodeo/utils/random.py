"""
Utilities for controlling and generating random numbers.
"""

import numpy as np

# A list of random states, used as a stack
random_states = []


def spawn_seeds(seed, n):
    """
    Derive `n` independent integer seeds from a master seed.

    The derived seeds depend only on (seed, n, position), so work distributed over
    any number of workers sees the same streams.

    :param seed: Master seed (a non-negative integer).
    :param n: Number of seeds to derive.
    :return: A list of `n` Python ints.
    """
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in children]


class Random:
    """
    A context manager that pushes a random seed to the stack for reproducible results,
    and pops it on exit.
    """

    def __init__(self, seed=None):
        self.seed = seed

    def __enter__(self):
        if self.seed is not None:
            # Push current state on stack
            random_states.append(np.random.get_state())
            new_state = np.random.RandomState(self.seed)
            np.random.set_state(new_state.get_state())

    def __exit__(self, *args):
        if self.seed is not None:
            np.random.set_state(random_states.pop())

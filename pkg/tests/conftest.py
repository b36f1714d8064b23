import numpy as np


class FixedRng:
    """RandomSource stand-in that replays a preset uniform stream."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=float)

    def uniform(self, n=None):
        if n is None:
            v, self.values = self.values[0], self.values[1:]
            return float(v)
        v, self.values = self.values[:n], self.values[n:]
        return v

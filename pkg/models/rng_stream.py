import math
import numpy as np

INVERSION_LIMIT = 10.0


class RngStream:
    """
    Deterministic stream of variates built on numpy's counter-based Philox
    generator. The stream is identified by its seed material: a master seed and
    an optional tuple of indices, hashed together by SeedSequence so that
    stream (k, j) never depends on how many other streams were created.
    """

    def __init__(self, seed: int, indices: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.indices = tuple(int(i) for i in indices)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=self.indices)
        self._generator = np.random.Generator(np.random.Philox(sequence))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, indices={self.indices})"

    @classmethod
    def derive(cls, master_seed: int, *indices: int) -> "RngStream":
        """Substream for a (population index, replication index, ...) key."""
        return cls(master_seed, indices)

    def child(self, *indices: int) -> "RngStream":
        return RngStream(self.seed, self.indices + tuple(indices))

    def uniform(self) -> float:
        """Uniform variate on [0, 1)."""
        return float(self._generator.random())

    def exponential(self, rate: float) -> float:
        """Exponential sojourn with the given rate, by inversion of one uniform."""
        return -math.log1p(-self.uniform()) / rate

    def poisson(self, mean: float) -> int:
        """
        Poisson variate. Means below 10 invert the CDF by sequential search on
        one uniform; larger means use numpy's transformed rejection (PTRS).
        """
        if mean <= 0.0:
            return 0
        if mean >= INVERSION_LIMIT:
            return int(self._generator.poisson(mean))
        u = self.uniform()
        p = math.exp(-mean)
        cumulative = p
        k = 0
        while u >= cumulative:
            k += 1
            p *= mean / k
            if cumulative + p == cumulative:
                break
            cumulative += p
        return k

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

"""Deterministic 64-bit seed derivation.

Every stochastic step in the package draws its seed through `derive_seed`,
so results are reproducible regardless of execution order or parallelism.
The mixing function is splitmix64 (Steele, Lea & Flood 2014), chained over
the integer parts:

    h = 0
    for part in parts:
        h = splitmix64(h ^ (part mod 2**64))

Per-run seeds follow the convention seed_alpha = derive_seed(master_seed,
instance_seed, alpha).
"""

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 output step for a 64-bit input."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(*parts: int) -> int:
    """Fold integer parts into one 64-bit seed, order-sensitively."""
    h = 0
    for part in parts:
        h = splitmix64(h ^ (part & _MASK64))
    return h

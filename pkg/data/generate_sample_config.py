"""
Sample Configuration Generator for lawson-forge

Writes a few ready-to-run JSON configurations: constant Cauchy data, seeded
random Cauchy data with an associated family, and an explicit edge list.
"""

import json
import math
import random
from typing import List


def random_edges(count: int, rng: random.Random, key: str, param: str) -> List[dict]:
    """
    Draw admissible edges for the explicit preset

    Args:
        count: Number of edges
        rng: Random source
        key: Name of the complex entry ("a" or "b")
        param: Name of the positive entry ("u" or "v")

    Returns:
        List of edge dictionaries with complex values written [re, im]
    """
    edges = []
    for _ in range(count):
        radius = 0.5 * math.sqrt(rng.random())
        angle = rng.uniform(0.0, 2.0 * math.pi)
        edges.append({
            key: [radius * math.cos(angle), radius * math.sin(angle)],
            param: rng.uniform(0.8, 1.25),
        })
    return edges


def generate_configs(seed: int = 7) -> dict:
    """Build the sample configurations keyed by file name"""
    rng = random.Random(seed)
    width, height = 6, 5

    constant = {
        "width": 4,
        "height": 4,
        "cauchy": {"preset": "constant", "a": 1.0, "u": 1.0, "b": 1.0, "v": 1.0},
        "ambients": ["r3", "s3"],
        "gammas": [math.pi / 4],
        "limit_gammas": [0.2, 0.1, 0.05, 0.025],
    }

    family = {
        "width": 8,
        "height": 8,
        "seed": seed,
        "cauchy": {"preset": "random", "a_abs_max": 0.6, "u_range": [0.75, 1.35], "v_range": [0.75, 1.35]},
        "ambients": ["r3", "s3", "sphere"],
        "gammas": [math.pi / 4, math.pi / 6, math.pi / 12],
        "limit_gammas": [0.025, 0.005, 0.001],
    }

    explicit = {
        "width": width,
        "height": height,
        "cauchy": {
            "preset": "explicit",
            "row0": random_edges(width - 1, rng, "a", "u"),
            "col0": random_edges(height - 1, rng, "b", "v"),
        },
        "ambients": ["r3", "s3"],
        "gammas": [math.pi / 4, math.pi / 5],
    }

    return {
        "config_constant.json": constant,
        "config_random.json": family,
        "config_explicit.json": explicit,
    }


def main():
    """Generate sample configurations and save them next to the working directory"""
    print("Generating sample configurations...")

    for name, config in generate_configs().items():
        with open(name, "w") as f:
            json.dump(config, f, indent=2)
        print(f"Saved {name}")


if __name__ == "__main__":
    main()

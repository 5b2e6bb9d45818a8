"""Finite-N bounds C_N for the built-in geometries, plus the steering
parameter of a few Werner states for each geometry."""

from tsteer.experiments import bounds_table
from tsteer.families import werner
from tsteer.quantum_state import correlation_matrix
from tsteer.steering import GEOMETRIES, steering_parameter_finite

ALPHAS = (0.5, 0.6, 0.7, 0.8)

def main():
    print(f"{'geometry':18s} {'N':>4s} {'C_N':>10s}  " + "  ".join(f"F_N(W{a})" for a in ALPHAS))
    for name, n, c in bounds_table():
        if name in GEOMETRIES:
            fs = [steering_parameter_finite(correlation_matrix(werner(a)), GEOMETRIES[name]) for a in ALPHAS]
            marks = "  ".join(f"{f:7.4f}{'*' if f > c else ' '}" for f in fs)
        else:
            marks = ""
        print(f"{name:18s} {n:>4} {c:10.7f}  {marks}")
    print("* violates the N-setting inequality")

if __name__ == "__main__":
    main()

"""
bargfock - Bargmann transform and Fock-space norms

Entrypoint for the bargfock CLI when run from a source checkout.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from bargfock.cli import run


if __name__ == "__main__":
    run()

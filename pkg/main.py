"""
Run the contract analytics CLI from the repository root without installing anything:

    python main.py renewal scenarios/high_tech.txt
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / 'backend' / 'src'))

from contract_lab.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())

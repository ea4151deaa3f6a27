"""
hh-lab launcher
Loads .env from the repository root and runs the command-line front end
"""
import sys
from pathlib import Path

from dotenv import load_dotenv


def main():
    """Launch the hh-lab CLI with the process arguments"""
    root_dir = Path(__file__).parent.absolute()
    load_dotenv(dotenv_path=root_dir / '.env')
    if str(root_dir) not in sys.path:
        sys.path.insert(0, str(root_dir))
    from hh_lab.cli import run
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()

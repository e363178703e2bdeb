import sys

from mrclab.cli import main

if __name__ == "__main__":
    sys.exit(main())

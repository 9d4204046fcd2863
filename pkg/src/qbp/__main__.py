import sys

from qbp.cli import main

sys.exit(main())

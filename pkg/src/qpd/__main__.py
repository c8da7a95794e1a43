import sys

from qpd.cli import main

sys.exit(main())

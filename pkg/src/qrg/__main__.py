import sys

from qrg.cli import main

sys.exit(main())

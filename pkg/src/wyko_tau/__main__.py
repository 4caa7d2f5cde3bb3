import sys

from wyko_tau.cli import main

sys.exit(main())

import sys

from conewright.cli import main

sys.exit(main())

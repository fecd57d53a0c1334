import sys

from momentcone.cli import main

sys.exit(main())

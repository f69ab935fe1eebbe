import sys

from sumdiff.cli import main

sys.exit(main())

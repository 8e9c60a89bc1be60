import sys

from vsmooth.cli import main

sys.exit(main())

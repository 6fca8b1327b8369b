import sys

from lealc.main import main

sys.exit(main())

import os
import sys

# allow running the suite without installing the package
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

# thin launcher; the commands live in a_framemult
import sys
from pathlib import Path

SOURCE_DIR = Path(__file__).resolve().parent

sys.path.insert(0, str(SOURCE_DIR))
import a_framemult

a_framemult.do()

from .main import RunConfig as RunConfig
from .main import main as main
from .main import run as run
from .spec import format_surface_spec as format_surface_spec
from .spec import parse_surface_spec as parse_surface_spec

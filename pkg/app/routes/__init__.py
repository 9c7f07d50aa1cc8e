# Routes package
from .axioms import axioms_bp
from .formulas import formulas_bp
from .models import models_bp
from .probability import probability_bp

import logging
from functools import wraps

from flask import jsonify, request

from app.errors import NsemError, RequestError

logger = logging.getLogger(__name__)


def handles_engine_errors(fn):
    """
    Decorator turning engine errors into JSON responses.

    NsemError subclasses map to their own status code and `to_dict()` body;
    anything else is logged and answered with a 500.

    Usage:
        @models_bp.route('/solutions', methods=['POST'])
        @handles_engine_errors
        def solutions():
            ...
    """
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except NsemError as e:
            logger.warning("Rejected %s %s: %s", request.method, request.path, e)
            return jsonify(e.to_dict()), e.status_code
        except Exception:
            logger.exception("Unhandled error in %s %s", request.method, request.path)
            return jsonify({'error': 'Internal server error'}), 500

    return wrapper


def json_body(*required):
    """Return the request JSON, raising a 400-style error when keys are missing"""
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise RequestError("Request body must be a JSON object")
    missing = [key for key in required if key not in data]
    if missing:
        raise RequestError(f"Missing field(s): {', '.join(missing)}")
    return data

from __future__ import annotations

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'AFFINE_MONOID_CAP': 10 ** 6,
    'AFFINE_ENUMERATION_BUDGET': 200000,
    'AFFINE_LATTICE_MAX_CARRIER': 7,
    'AFFINE_ORACLE_MAX_CARRIER': 4,
    'AFFINE_MAX_ARITY': 4,
    'AFFINE_REPORT_WITNESS_LIMIT': 50,
}


def get_setting(name):
    """
    Returns the value of the setting `name`.

    Django settings win over the defaults above; when Django is not
    configured at all (plain library use) the default is returned.
    """
    default = DEFAULTS[name]
    if not settings.configured:
        return default

    value = getattr(settings, name, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ImproperlyConfigured("The setting '%s' must be a positive integer, got %r." % (name, value))
    return value


def resolve(value, name):
    """Returns `value` unless it is None, else the setting `name`."""
    if value is None:
        return get_setting(name)
    return value

"""
The `affine-bounds` console script: runs the `affine` management command
outside a Django project.
"""
import io
import logging
import sys

logger = logging.getLogger(__name__)

PROG = 'affine-bounds'


def setup():
    """Configures minimal settings unless a Django project already has."""
    import django
    from django.conf import settings

    if not settings.configured:
        settings.configure(INSTALLED_APPS=['affine_bounds'], USE_TZ=True)
    django.setup()


def run(argv, stdin=None):
    """
    Runs one verb and returns (exit_code, stdout, stderr).

    Exit codes: 0 when the analysis succeeds, 1 for a negative verdict, 2
    for usage or input errors (with the usage on stderr for bad flags).
    With --json, stdout holds exactly one JSON report in every case.
    """
    from django.core.management import call_command
    from django.core.management.base import CommandError

    from affine_bounds import reports
    from affine_bounds.management.commands.affine import VERBS, Command

    stdout, stderr = io.StringIO(), io.StringIO()
    command = Command(stdout=stdout, stderr=stderr)
    try:
        call_command(command, *argv, stdout=stdout, stderr=stderr, stdin=stdin)
    except CommandError as e:
        if '--json' in argv and not stdout.getvalue():
            # rejected before the verb ran
            verb = next((arg for arg in argv if arg in VERBS), '')
            stdout.write(reports.error_report(verb, e).model_dump_json() + '\n')
        stderr.write('%s: error: %s\n' % (PROG, e))
        stderr.write(command.create_parser(PROG, 'affine').format_usage())
        return 2, stdout.getvalue(), stderr.getvalue()
    return command.exit_code, stdout.getvalue(), stderr.getvalue()


def main(argv=None):
    setup()
    code, out, err = run(sys.argv[1:] if argv is None else argv, stdin=sys.stdin)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == '__main__':
    sys.exit(main())

import logging
import sys

import click

from app import config
from app.errors import AlgebraError, NotHomogeneousError
from app.logs import setup_logging
from app.services.coeff import Field
from app.services.defring import DeformationCase, run_full_verification
from app.services.groebner import buchberger
from app.services.hilbert import hilbert_data
from app.services.ideal_file import format_ideal, read_ideal_file
from app.services.local import local_colength, local_dimension, local_multiplicity, standard_basis
from app.services.report import FAILED

logger = logging.getLogger(__name__)

CASE_CHOICES = [c.value for c in DeformationCase] + ['all']


def _fail(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _odd_primes(ctx, param, value):
    for p in value:
        try:
            Field.prime(p)
        except AlgebraError as e:
            raise click.BadParameter(str(e))
    return value


# =========================
# COMPUTATIONS ON IDEAL FILES
# =========================

def groebner_lines(ideal):
    """Reduced basis for a global order, a standard basis for negdegrevlex."""
    if ideal.ring.order.is_local:
        basis = standard_basis(ideal, ideal.ring.order)
    else:
        basis = buchberger(ideal, ideal.ring.order)
    return format_ideal(ideal.ring, basis.basis)


def multiplicity_line(ideal, local=False):
    """'dim d, e m' or, for a zero-dimensional quotient, 'dim 0, length N'."""
    if local:
        dim = local_dimension(ideal)
        if dim == 0:
            return f"dim 0, length {local_colength(ideal)}"
        return f"dim {dim}, e {local_multiplicity(ideal)}"
    if not ideal.is_homogeneous():
        raise NotHomogeneousError("ideal is not homogeneous; use --local for the multiplicity at the origin")
    data = hilbert_data(ideal)
    if data.dimension == 0:
        return f"dim 0, length {data.degree}"
    return f"dim {data.dimension}, e {data.degree}"


@click.group()
@click.option('--log-level', default=None, help='DEBUG, INFO, WARNING or ERROR (default from LOG_LEVEL)')
def cli(log_level):
    """Commutative-algebra verifier for the deformation ring computations."""
    setup_logging(log_level.upper() if log_level else None)


@cli.command('gb')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('-o', '--output', type=click.Path(dir_okay=False), help='Write the basis here instead of stdout')
def gb(input_path, output):
    """Reduced Groebner basis of an ideal file, in the same format."""
    try:
        text = groebner_lines(read_ideal_file(input_path))
    except AlgebraError as e:
        _fail(e)
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info("Basis written to %s", output)
    else:
        click.echo(text, nl=False)


@cli.command('mult')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--local', 'local', is_flag=True, help='Work in the localization at the origin (tangent cone)')
def mult(input_path, local):
    """Dimension and multiplicity (or length) of ring/I."""
    try:
        click.echo(multiplicity_line(read_ideal_file(input_path), local))
    except AlgebraError as e:
        _fail(e)


@cli.command('verify-paper')
@click.option('--case', 'case', type=click.Choice(CASE_CHOICES), default='all', show_default=True)
@click.option('--prime', 'primes', type=int, multiple=True, callback=_odd_primes,
              help='Odd prime to verify at (repeatable; default from VERIFY_PRIMES)')
@click.option('--report', 'report_path', type=click.Path(dir_okay=False), help='Write the JSON report here')
@click.option('--jobs', type=int, default=None, help='Claims run concurrently (default from VERIFY_JOBS)')
@click.option('--timeout', type=float, default=None, help='Seconds per claim before it is skipped; 0 = none')
@click.option('--timings', is_flag=True, help='Include elapsed_ms per claim in the report')
@click.option('--mutate-i3', is_flag=True, help='Negative control: flip the sign of the middle term of I3')
def verify_paper(case, primes, report_path, jobs, timeout, timings, mutate_i3):
    """Replay every computational claim; exit 0 verified, 1 failed, 2 usage error."""
    primes = list(primes) or list(config.VERIFY_PRIMES)
    cases = tuple(DeformationCase) if case == 'all' else (DeformationCase(case),)
    try:
        report = run_full_verification(
            primes,
            cases,
            jobs=jobs or config.VERIFY_JOBS,
            timeout=config.CLAIM_TIMEOUT if timeout is None else timeout,
            mutate_i3=mutate_i3,
        )
    except AlgebraError as e:
        _fail(e)

    for result in report.claims:
        if result.claim_id.startswith('theorem1.multiplicity.'):
            e = result.witnesses.get('tangent_cone_route')
            click.echo(f"{result.claim_id}: e = {e} ({result.status})")
    for result in report.failed():
        click.echo(f"FAILED {result.claim_id} [{result.paper_anchor}]")
    counts = report.counts()
    click.echo(f"verdict: {report.verdict} "
               f"({counts['verified']} verified, {counts['failed']} failed, {counts['skipped']} skipped)")

    if report_path:
        try:
            report.write(report_path, timings=timings)
        except OSError as e:
            _fail(f"cannot write report {report_path}: {e.strerror}")
        logger.info("Report written to %s", report_path)
    sys.exit(1 if report.verdict == FAILED else 0)


@cli.command('serve')
@click.option('--host', default='0.0.0.0', show_default=True)
@click.option('--port', default=5000, type=int, show_default=True)
@click.option('--debug', is_flag=True)
def serve(host, port, debug):
    """Run the HTTP service with its background verification worker."""
    from app import create_app
    from app.routes.verify import start_worker

    app = create_app()
    start_worker()
    app.run(host=host, port=port, debug=debug, use_reloader=False)

from django.utils.translation import gettext as _

from homzero.conf import logger
from homzero.formats import file_digest, load_module, load_presentation
from homzero.homology import homology_groups
from homzero.management.base import HomzeroCommand
from homzero.presentation import (
    cat0_from_graph,
    check_cat0_criterion,
    delta_graph,
    entrance_exit_check,
    gamma_quotient,
    ideal_quotient,
    longest_path,
)
from homzero.report import Report
from homzero.semigroup import invalid, is_categorical_at_zero

IDEAL = "ideal"
GRAPH = "graph"
AUTO = "auto"


class Command(HomzeroCommand):
    # Translators: help text for hzpipeline management command
    help = _(
        "Computes the homology of a finitely presented semigroup through a "
        "finite categorical at zero semigroup whose 0-reflector it is."
    )

    def add_arguments(self, parser):
        parser.add_argument("presentation", help="Presentation text file.")
        parser.add_argument("module", help="Module JSON file, actions given per generator.")
        self.add_max_dim(parser)
        parser.add_argument(
            "--via",
            choices=[AUTO, IDEAL, GRAPH],
            dest="via",
            default=AUTO,
            help="Collapse the ideal of non-factors, or add the zero pairs missing from "
            "the letter graph. auto uses the zero pairs of the file when it has any.",
        )

    def handle(self, *args, **options):
        max_dim = self.max_dim(options)
        p = load_presentation(options["presentation"])
        via = options.get("via", AUTO)
        if via == AUTO:
            via = GRAPH if p.zero_pairs else IDEAL
        report = Report(
            "hzpipeline",
            digest=file_digest(options["presentation"], options["module"]),
            label="H_{n}(T,A)",
            route=via,
        )
        with self.collecting(report):
            if via == IDEAL:
                s = ideal_quotient(p)
                report.verified.append(
                    _("the collapsed ideal is nonempty and contains no generator")
                )
            else:
                s = self.graph_quotient(p, report)
            logger.info(_(f"{via} route gives a semigroup of {s.size} elements"))
            report.verdicts["elements"] = s.size
            categorical = is_categorical_at_zero(s)
            report.verdicts["categorical_at_zero"] = categorical.holds
            if not categorical:
                raise invalid(
                    _("the quotient is not categorical at zero"),
                    "not_categorical",
                    ",".join(s.names[x] for x in categorical.witness),
                )
            report.verified.append(
                _("the quotient is categorical at zero, so its 0-homology is the homology of T")
            )
            a = load_module(options["module"], s)
            report.groups = homology_groups(s, a, max_dim, jobs=options.get("jobs"))
        self.add_vanishing_note(report, s.nilpotency_degree(), max_dim)
        self.emit(report, options)

    def graph_quotient(self, p, report):
        if not p.zero_pairs:
            verdict = entrance_exit_check(p)
            report.verdicts["entrance_exit"] = verdict.holds
            if not verdict:
                raise invalid(verdict.reason, "entrance_exit", verdict.witness)
            report.verified.append(_("every relation starts at an entrance and ends at an exit"))
            p = cat0_from_graph(p)
            l0 = longest_path(delta_graph(p.nonzero_relations, p.size))
            report.verdicts["longest_path"] = l0
            report.verdicts["vanishing_above"] = l0 + 1
        criterion = check_cat0_criterion(p)
        report.verdicts["criterion"] = criterion.holds
        return gamma_quotient(p)

    @staticmethod
    def add_vanishing_note(report, degree, max_dim):
        if degree is None:
            report.notes.append(_("degrees above %(n)s were not computed") % {"n": max_dim})
            return
        report.verdicts["nilpotency_degree"] = degree
        start = degree
        while start - 1 >= 1 and start - 1 in report.groups and report.groups[start - 1].is_trivial:
            start -= 1
        report.notes.append(
            _("H_n(T,A) = 0 for every n >= %(n)s (no tuples of length %(k)s)")
            % {"n": start, "k": degree}
        )

from .concepts import (
    BOT, TOP, And, Atom, Bot, Box, Concept, Dia, Or, Top,
    atoms_of, render_concept, subformulas,
)
from .individuals import (
    Classifier, Individual, IndividualRegistry, ModalOp, Named, Prefixed, Sort,
    apply_op, canonicalize, classifying_feature, classifying_object, feat, obj,
    render_individual,
)
from .terms import (
    AboxTerm, BoxRel, DescribedBy, DiaRel, Gci, Incidence, KnowledgeBase, MemberOf,
    Signature, TboxDefinition, render_term, signature_of,
)
from .parser import parse_concept, parse_individual, parse_kb, parse_term, render_kb
from .measures import (
    abox_depths, abox_size, concept_box_depth, concept_dia_depth,
    individual_box_depth, individual_dia_depth, occurs_in, step_bound, term_size,
)

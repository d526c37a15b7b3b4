"""Per-criterion outcomes shared by the acceptance tests and the summary hook."""

CRITERIA: dict = {}

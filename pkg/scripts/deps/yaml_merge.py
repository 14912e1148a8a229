from typing import Any


def mergeYaml(priorityYaml: Any, defaultYaml: Any) -> Any:
  """Merge two parsed YAML documents. Nested mappings are merged key by key,
  any other value in *priorityYaml* replaces the default."""
  if not isinstance(defaultYaml, dict) or not isinstance(priorityYaml, dict):
    return priorityYaml
  finalYaml = dict(defaultYaml)
  for key, value in priorityYaml.items():
    if key in finalYaml:
      finalYaml[key] = mergeYaml(value, finalYaml[key])
    else:
      finalYaml[key] = value
  return finalYaml

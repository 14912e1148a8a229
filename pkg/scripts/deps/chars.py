from typing import List, Optional, Sequence

from blessed import Terminal

specialChars = {
  "latin": {
    "borderVertical": "║",
    "borderHorizontal": "═",
    "borderTopLeft": "╔",
    "borderTopRight": "╗",
    "borderBottomLeft": "╚",
    "borderBottomRight": "╝",
    "columnSeparator": "│"
  },
  "simple": {
    "borderVertical": "│",
    "borderHorizontal": "─",
    "borderTopLeft": "┌",
    "borderTopRight": "┐",
    "borderBottomLeft": "└",
    "borderBottomRight": "┘",
    "columnSeparator": "│"
  },
  "ascii": {
    "borderVertical": "|",
    "borderHorizontal": "-",
    "borderTopLeft": "/",
    "borderTopRight": "\\",
    "borderBottomLeft": "\\",
    "borderBottomRight": "/",
    "columnSeparator": "|"
  }
}

renderModes = list(specialChars)

def commonTopBorder(renderMode, size=80):
  chars = specialChars[renderMode]
  return chars["borderTopLeft"] + chars["borderHorizontal"] * size + chars["borderTopRight"]

def commonBottomBorder(renderMode, size=80):
  chars = specialChars[renderMode]
  return chars["borderBottomLeft"] + chars["borderHorizontal"] * size + chars["borderBottomRight"]

def padText(text, size=45):
  return text + " " * (size - len(text))

def commonLine(renderMode, text, size=80):
  bv = specialChars[renderMode]["borderVertical"]
  return bv + padText(text, size) + bv

def boxedTable(renderMode: str, title: str, header: Sequence[str],
               rows: Sequence[Sequence[object]],
               term: Optional[Terminal] = None) -> List[str]:
  """Lines of a bordered table. With *term*, the title and header are
  highlighted; padding is computed on the plain text."""
  cells = [[str(c) for c in row] for row in rows]
  widths = [max([len(header[i])] + [len(row[i]) for row in cells])
            for i in range(len(header))]
  separator = " {} ".format(specialChars[renderMode]["columnSeparator"])

  def joinRow(values):
    return separator.join(padText(v, w) for v, w in zip(values, widths))

  size = max(len(title), len(joinRow(header))) + 2
  titleText, headerText = " " + title, " " + joinRow(header)
  bv = specialChars[renderMode]["borderVertical"]
  lines = [commonTopBorder(renderMode, size)]
  if term is not None:
    lines.append(bv + term.bold(padText(titleText, size)) + bv)
    lines.append(bv + term.underline(padText(headerText, size)) + bv)
  else:
    lines.append(commonLine(renderMode, titleText, size))
    lines.append(commonLine(renderMode, headerText, size))
  for row in cells:
    lines.append(commonLine(renderMode, " " + joinRow(row), size))
  lines.append(commonBottomBorder(renderMode, size))
  return lines

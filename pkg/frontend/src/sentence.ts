/** Pre-flight check for judgment sentences.
 *
 * Mirrors the service grammar exactly, offsets included, so the inline
 * caret lands where the server's error would point and nothing malformed
 * is ever sent.  Grammar: constants T and F, identifiers, `~`/`not`,
 * `&`/`and`, `|`/`or`, parentheses; not binds over and over or.
 */

export interface SentenceProblem {
  message: string;
  offset: number;
}

type TokKind = "lpar" | "rpar" | "neg" | "amp" | "pipe" | "word" | "const" | "end";

interface Tok {
  kind: TokKind;
  value: string;
  offset: number;
}

class Reject extends Error {
  constructor(message: string, readonly offset: number) {
    super(message);
  }
}

const IDENT_START = /[A-Za-z_]/;
const IDENT_PART = /[A-Za-z0-9_]/;
const PUNCT: Record<string, TokKind> = { "(": "lpar", ")": "rpar", "~": "neg", "&": "amp", "|": "pipe" };

function tokenize(text: string): Tok[] {
  const tokens: Tok[] = [];
  let pos = 0;
  while (pos < text.length) {
    const ch = text[pos]!;
    if (/\s/.test(ch)) {
      pos += 1;
      continue;
    }
    const punct = PUNCT[ch];
    if (punct !== undefined) {
      if (punct === "pipe" && text[pos + 1] === "|") {
        throw new Reject("'||' is not an operator; use a single '|' or 'or'", pos);
      }
      tokens.push({ kind: punct, value: ch, offset: pos });
      pos += 1;
      continue;
    }
    if (IDENT_START.test(ch)) {
      let end = pos + 1;
      while (end < text.length && IDENT_PART.test(text[end]!)) end += 1;
      const value = text.slice(pos, end);
      let kind: TokKind = "word";
      if (value === "not") kind = "neg";
      else if (value === "and") kind = "amp";
      else if (value === "or") kind = "pipe";
      else if (value === "T" || value === "F") kind = "const";
      tokens.push({ kind, value, offset: pos });
      pos = end;
      continue;
    }
    throw new Reject(`unexpected character '${ch}'`, pos);
  }
  tokens.push({ kind: "end", value: "", offset: text.length });
  return tokens;
}

class Parser {
  private i = 0;

  constructor(private tokens: Tok[], private names: ReadonlySet<string>) {}

  private peek(): Tok {
    return this.tokens[this.i]!;
  }

  private take(): Tok {
    return this.tokens[this.i++]!;
  }

  parse(): void {
    this.parseOr();
    const tok = this.peek();
    if (tok.kind !== "end") {
      throw new Reject(`unexpected '${tok.value}'`, tok.offset);
    }
  }

  private parseOr(): void {
    this.parseAnd();
    while (this.peek().kind === "pipe") {
      this.take();
      this.parseAnd();
    }
  }

  private parseAnd(): void {
    this.parseNot();
    while (this.peek().kind === "amp") {
      this.take();
      this.parseNot();
    }
  }

  private parseNot(): void {
    if (this.peek().kind === "neg") {
      this.take();
      this.parseNot();
      return;
    }
    this.parsePrimary();
  }

  private parsePrimary(): void {
    const tok = this.take();
    if (tok.kind === "lpar") {
      this.parseOr();
      const close = this.take();
      if (close.kind !== "rpar") {
        throw new Reject("expected ')'", close.offset);
      }
      return;
    }
    if (tok.kind === "const") return;
    if (tok.kind === "word") {
      if (!this.names.has(tok.value)) {
        throw new Reject(`unknown atom '${tok.value}'`, tok.offset);
      }
      return;
    }
    if (tok.kind === "end") {
      throw new Reject("unexpected end of sentence", tok.offset);
    }
    throw new Reject(`unexpected '${tok.value}'`, tok.offset);
  }
}

/** Null when the sentence would parse server-side, else the problem with
 * the offset the server would report. */
export function checkSentence(text: string, names: readonly string[]): SentenceProblem | null {
  try {
    new Parser(tokenize(text), new Set(names)).parse();
    return null;
  } catch (err) {
    if (err instanceof Reject) {
      return { message: err.message, offset: err.offset };
    }
    throw err;
  }
}

/** Atom names from a space spec line like "worlds: w1 w2 w3". */
export function spaceNames(spec: string): string[] {
  const colon = spec.indexOf(":");
  if (colon < 0) return [];
  return spec.slice(colon + 1).trim().split(/\s+/).filter((s) => s.length > 0);
}

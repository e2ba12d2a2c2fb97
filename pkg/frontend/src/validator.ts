/**
 * Minimal draft-07 JSON-schema interpreter covering the subset the wire
 * protocol schema uses: $ref into definitions, oneOf, type, const, enum,
 * required, properties, additionalProperties:false, items, minItems /
 * maxItems, minimum / exclusiveMinimum, pattern.
 *
 * The schema file itself is the single source of truth (imported, never
 * duplicated); the server validates the same file with an independent
 * implementation, so the two ends cross-check each other.
 */

export type Schema = Record<string, unknown>;

interface Root {
  definitions?: Record<string, Schema>;
}

function resolveRef(root: Root, ref: string): Schema {
  const match = /^#\/definitions\/(.+)$/.exec(ref);
  if (!match || !root.definitions || !(match[1]! in root.definitions)) {
    throw new Error(`unresolvable $ref ${ref}`);
  }
  return root.definitions[match[1]!]!;
}

function typeOf(value: unknown): string {
  if (value === null) return "null";
  if (Array.isArray(value)) return "array";
  return typeof value;
}

function checkType(expected: string, value: unknown): boolean {
  switch (expected) {
    case "object":
      return typeOf(value) === "object";
    case "array":
      return Array.isArray(value);
    case "string":
      return typeof value === "string";
    case "boolean":
      return typeof value === "boolean";
    case "null":
      return value === null;
    case "number":
      return typeof value === "number" && Number.isFinite(value);
    case "integer":
      return typeof value === "number" && Number.isInteger(value);
    default:
      throw new Error(`unsupported type keyword ${expected}`);
  }
}

function validateAt(root: Root, schema: Schema, value: unknown, path: string,
                    errors: string[]): void {
  if (typeof schema.$ref === "string") {
    validateAt(root, resolveRef(root, schema.$ref), value, path, errors);
    return;
  }
  if (Array.isArray(schema.oneOf)) {
    let matches = 0;
    for (const branch of schema.oneOf as Schema[]) {
      const branchErrors: string[] = [];
      validateAt(root, branch, value, path, branchErrors);
      if (branchErrors.length === 0) matches += 1;
    }
    if (matches !== 1) {
      errors.push(`${path}: matched ${matches} oneOf branches (need exactly 1)`);
    }
    return;
  }
  if ("const" in schema && value !== schema.const) {
    errors.push(`${path}: expected const ${JSON.stringify(schema.const)}`);
    return;
  }
  if (Array.isArray(schema.enum) && !schema.enum.includes(value)) {
    errors.push(`${path}: not one of ${JSON.stringify(schema.enum)}`);
    return;
  }
  if (typeof schema.type === "string" && !checkType(schema.type, value)) {
    errors.push(`${path}: expected ${schema.type}, got ${typeOf(value)}`);
    return;
  }
  if (typeof value === "number") {
    if (typeof schema.minimum === "number" && value < schema.minimum) {
      errors.push(`${path}: ${value} below minimum ${schema.minimum}`);
    }
    if (typeof schema.exclusiveMinimum === "number" && value <= schema.exclusiveMinimum) {
      errors.push(`${path}: ${value} not above ${schema.exclusiveMinimum}`);
    }
  }
  if (typeof value === "string" && typeof schema.pattern === "string") {
    if (!new RegExp(schema.pattern).test(value)) {
      errors.push(`${path}: does not match ${schema.pattern}`);
    }
  }
  if (Array.isArray(value)) {
    if (typeof schema.minItems === "number" && value.length < schema.minItems) {
      errors.push(`${path}: fewer than ${schema.minItems} items`);
    }
    if (typeof schema.maxItems === "number" && value.length > schema.maxItems) {
      errors.push(`${path}: more than ${schema.maxItems} items`);
    }
    if (schema.items && typeof schema.items === "object") {
      value.forEach((item, i) =>
        validateAt(root, schema.items as Schema, item, `${path}[${i}]`, errors));
    }
  }
  if (typeOf(value) === "object" && value !== null) {
    const record = value as Record<string, unknown>;
    const properties = (schema.properties ?? {}) as Record<string, Schema>;
    for (const name of (schema.required ?? []) as string[]) {
      if (!(name in record)) errors.push(`${path}: missing required '${name}'`);
    }
    for (const [name, sub] of Object.entries(properties)) {
      if (name in record) {
        validateAt(root, sub, record[name], `${path}.${name}`, errors);
      }
    }
    if (schema.additionalProperties === false) {
      for (const name of Object.keys(record)) {
        if (!(name in properties)) errors.push(`${path}: unexpected '${name}'`);
      }
    } else if (schema.additionalProperties && typeof schema.additionalProperties === "object") {
      for (const [name, sub] of Object.entries(record)) {
        if (!(name in properties)) {
          validateAt(root, schema.additionalProperties as Schema, sub,
                     `${path}.${name}`, errors);
        }
      }
    }
  }
}

/** All violations of `schema` by `value` (empty when valid). */
export function validationErrors(schema: Schema, value: unknown): string[] {
  const errors: string[] = [];
  validateAt(schema as Root, schema, value, "$", errors);
  return errors;
}

export function isValid(schema: Schema, value: unknown): boolean {
  return validationErrors(schema, value).length === 0;
}

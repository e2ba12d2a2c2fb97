// GENERATED from src/agentsim/schemas/protocol.schema.json - do not edit.
// Regenerate with `node scripts/gen_schema.mjs`.
export default {
  "$schema": "http://json-schema.org/draft-07/schema#",
  "$id": "agentsim-protocol",
  "title": "Exploration session wire protocol",
  "description": "Every JSON message exchanged over POST /sessions and WS /sessions/{id} validates against exactly one branch of this schema.",
  "oneOf": [
    {
      "$ref": "#/definitions/create"
    },
    {
      "$ref": "#/definitions/step"
    },
    {
      "$ref": "#/definitions/play"
    },
    {
      "$ref": "#/definitions/pause"
    },
    {
      "$ref": "#/definitions/set_param"
    },
    {
      "$ref": "#/definitions/reset"
    },
    {
      "$ref": "#/definitions/subscribe"
    },
    {
      "$ref": "#/definitions/clear_series"
    },
    {
      "$ref": "#/definitions/session_created"
    },
    {
      "$ref": "#/definitions/models"
    },
    {
      "$ref": "#/definitions/snapshot"
    },
    {
      "$ref": "#/definitions/series"
    },
    {
      "$ref": "#/definitions/reset_marker"
    },
    {
      "$ref": "#/definitions/param_ack"
    },
    {
      "$ref": "#/definitions/ack"
    },
    {
      "$ref": "#/definitions/error"
    }
  ],
  "definitions": {
    "param_value": {
      "oneOf": [
        {
          "type": "number"
        },
        {
          "type": "boolean"
        },
        {
          "type": "string"
        }
      ]
    },
    "param_range": {
      "type": "object",
      "properties": {
        "type": {
          "enum": [
            "int",
            "float"
          ]
        },
        "min": {
          "type": "number"
        },
        "max": {
          "type": "number"
        },
        "step": {
          "type": "number"
        },
        "values": {
          "type": "array",
          "items": {
            "$ref": "#/definitions/param_value"
          }
        }
      },
      "additionalProperties": false
    },
    "create": {
      "type": "object",
      "properties": {
        "type": {
          "const": "create"
        },
        "model": {
          "type": "string"
        },
        "config": {
          "type": "object"
        }
      },
      "required": [
        "type",
        "model"
      ],
      "additionalProperties": false
    },
    "step": {
      "type": "object",
      "properties": {
        "type": {
          "const": "step"
        },
        "n": {
          "type": "integer",
          "minimum": 0
        }
      },
      "required": [
        "type",
        "n"
      ],
      "additionalProperties": false
    },
    "play": {
      "type": "object",
      "properties": {
        "type": {
          "const": "play"
        },
        "sps": {
          "type": "number",
          "exclusiveMinimum": 0
        }
      },
      "required": [
        "type",
        "sps"
      ],
      "additionalProperties": false
    },
    "pause": {
      "type": "object",
      "properties": {
        "type": {
          "const": "pause"
        }
      },
      "required": [
        "type"
      ],
      "additionalProperties": false
    },
    "set_param": {
      "type": "object",
      "properties": {
        "type": {
          "const": "set_param"
        },
        "name": {
          "type": "string"
        },
        "value": {
          "$ref": "#/definitions/param_value"
        }
      },
      "required": [
        "type",
        "name",
        "value"
      ],
      "additionalProperties": false
    },
    "reset": {
      "type": "object",
      "properties": {
        "type": {
          "const": "reset"
        }
      },
      "required": [
        "type"
      ],
      "additionalProperties": false
    },
    "subscribe": {
      "type": "object",
      "properties": {
        "type": {
          "const": "subscribe"
        }
      },
      "required": [
        "type"
      ],
      "additionalProperties": false
    },
    "clear_series": {
      "type": "object",
      "properties": {
        "type": {
          "const": "clear_series"
        }
      },
      "required": [
        "type"
      ],
      "additionalProperties": false
    },
    "session_created": {
      "type": "object",
      "properties": {
        "type": {
          "const": "session_created"
        },
        "session_id": {
          "type": "string"
        },
        "model": {
          "type": "string"
        },
        "params": {
          "type": "object"
        },
        "param_ranges": {
          "type": "object",
          "additionalProperties": {
            "$ref": "#/definitions/param_range"
          }
        },
        "labels": {
          "type": "array",
          "items": {
            "type": "string"
          }
        },
        "step": {
          "type": "integer",
          "minimum": 0
        }
      },
      "required": [
        "type",
        "session_id",
        "model",
        "params",
        "param_ranges",
        "labels",
        "step"
      ],
      "additionalProperties": false
    },
    "models": {
      "type": "object",
      "properties": {
        "type": {
          "const": "models"
        },
        "models": {
          "type": "array",
          "items": {
            "type": "object",
            "properties": {
              "name": {
                "type": "string"
              },
              "defaults": {
                "type": "object"
              },
              "param_ranges": {
                "type": "object",
                "additionalProperties": {
                  "$ref": "#/definitions/param_range"
                }
              },
              "labels": {
                "type": "array",
                "items": {
                  "type": "string"
                }
              }
            },
            "required": [
              "name",
              "defaults",
              "param_ranges",
              "labels"
            ],
            "additionalProperties": false
          }
        }
      },
      "required": [
        "type",
        "models"
      ],
      "additionalProperties": false
    },
    "snapshot": {
      "type": "object",
      "properties": {
        "type": {
          "const": "snapshot"
        },
        "step": {
          "type": "integer",
          "minimum": 0
        },
        "bounds": {
          "type": "array",
          "items": {
            "type": "number"
          },
          "minItems": 2,
          "maxItems": 2
        },
        "agents": {
          "type": "array",
          "items": {
            "type": "object",
            "properties": {
              "id": {
                "type": "integer"
              },
              "x": {
                "type": "number"
              },
              "y": {
                "type": "number"
              },
              "color": {
                "type": "string",
                "pattern": "^#[0-9a-fA-F]{6}$"
              },
              "marker": {
                "enum": [
                  "circle",
                  "rect",
                  "triangle"
                ]
              },
              "size": {
                "type": "number"
              }
            },
            "required": [
              "id",
              "x",
              "y",
              "color",
              "marker",
              "size"
            ],
            "additionalProperties": false
          }
        },
        "heat": {
          "type": "object",
          "properties": {
            "dims": {
              "type": "array",
              "items": {
                "type": "integer",
                "minimum": 1
              },
              "minItems": 2,
              "maxItems": 2
            },
            "values": {
              "type": "array",
              "items": {
                "type": "number"
              }
            }
          },
          "required": [
            "dims",
            "values"
          ],
          "additionalProperties": false
        }
      },
      "required": [
        "type",
        "step",
        "bounds",
        "agents"
      ],
      "additionalProperties": false
    },
    "series": {
      "type": "object",
      "properties": {
        "type": {
          "const": "series"
        },
        "label": {
          "type": "string"
        },
        "step": {
          "type": "integer",
          "minimum": 0
        },
        "value": {
          "oneOf": [
            {
              "type": "number"
            },
            {
              "type": "null"
            }
          ]
        }
      },
      "required": [
        "type",
        "label",
        "step",
        "value"
      ],
      "additionalProperties": false
    },
    "reset_marker": {
      "type": "object",
      "properties": {
        "type": {
          "const": "reset_marker"
        },
        "step": {
          "type": "integer",
          "minimum": 0
        }
      },
      "required": [
        "type",
        "step"
      ],
      "additionalProperties": false
    },
    "param_ack": {
      "type": "object",
      "properties": {
        "type": {
          "const": "param_ack"
        },
        "name": {
          "type": "string"
        },
        "value": {
          "$ref": "#/definitions/param_value"
        }
      },
      "required": [
        "type",
        "name",
        "value"
      ],
      "additionalProperties": false
    },
    "ack": {
      "type": "object",
      "properties": {
        "type": {
          "const": "ack"
        },
        "op": {
          "type": "string"
        }
      },
      "required": [
        "type",
        "op"
      ],
      "additionalProperties": false
    },
    "error": {
      "type": "object",
      "properties": {
        "type": {
          "const": "error"
        },
        "code": {
          "type": "string"
        },
        "message": {
          "type": "string"
        }
      },
      "required": [
        "type",
        "code",
        "message"
      ],
      "additionalProperties": false
    }
  }
} as const;

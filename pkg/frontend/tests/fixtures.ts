/** Hand-rolled state payload in the service's wire format. */

export function statePayload(seq: number, tipZ = "156.62395430396577"): string {
  return `{
    "session_id": "abc123def456",
    "name": "teach-demo",
    "seq": ${seq},
    "homed": true,
    "joints": {"translations": [100.0, 160.0], "rotations": [0.0, 90.0]},
    "actual_joints": {"translations": [100.0, 160.0], "rotations": [0.0, 90.00090009000901]},
    "limits": {"translation": [0.0, 200.0], "rotation": [-180.0, 180.0]},
    "tubes": [
      {"tube_id": 1, "youngs_modulus_gpa": 75.0, "outer_diameter": 2.4,
       "inner_diameter": 2.0, "precurvature": 0.005555555555555556,
       "straight_length": 120.0, "curved_length": 40.0, "bending_stiffness": 63240.26},
      {"tube_id": 2, "youngs_modulus_gpa": 75.0, "outer_diameter": 1.8,
       "inner_diameter": 1.4, "precurvature": 0.008333333333333333,
       "straight_length": 140.0, "curved_length": 60.0, "bending_stiffness": 24504.42}
    ],
    "links": [
      {"s_start": 0.0, "s_end": 60.0, "arc_length": 60.0,
       "members": {"1": "straight", "2": "straight"},
       "curvature": 0.0, "plane_angle": 0.0, "absolute_plane_angle": 0.0},
      {"s_start": 60.0, "s_end": 100.0, "arc_length": 40.0,
       "members": {"1": "curved", "2": "straight"},
       "curvature": 0.004004057763456259, "plane_angle": 0.0, "absolute_plane_angle": 0.0},
      {"s_start": 100.0, "s_end": 160.0, "arc_length": 60.0,
       "members": {"2": "curved"},
       "curvature": 0.008333333333333333, "plane_angle": 90.0, "absolute_plane_angle": 90.0}
    ],
    "tip": {
      "position": [12.371369148439937, 14.690092573155276, ${tipZ}],
      "rotation": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    },
    "backbone": {"ds": 1.0, "samples": [
      {"s": 0.0, "p": [0.0, 0.0, 0.0]},
      {"s": 80.0, "p": [0.6, 0.0, 79.9]},
      {"s": 160.0, "p": [12.37, 14.69, 156.62]}
    ]},
    "registration": null
  }`;
}

from profiles.flows import (
    FlowProfile,
    ProfileError,
    build_profile,
    couette,
    load_profile_csv,
    poiseuille,
    tabulated,
)

//! The EMA instrument, answer values and the 21-slot participant week.

mod answer;
mod clock;
mod response;
mod sleep;
mod survey;
mod week;
mod window;

pub use answer::{likert_to_diverging, AnswerKind, AnswerValue, KindError, LikertError};
pub use clock::{ClockError, ClockTime, MINUTES_PER_DAY};
pub use response::{validate_response, EmaResponse, ValidationError, Violation};
pub use sleep::{duration_label, sleep_duration, AmbiguousSleep, SleepQuality, SleepRecord};
pub use survey::{
    default_survey_definition, qid, DefinitionError, Facet, HueRole, Question, SurveyDefinition,
    SurveyWindow, WindowSet, PEER_QUALITY_LEVELS, SCHOOL_MISS_REASONS, SLEEP_QUALITY_LEVELS,
    SYMPTOM_CATEGORIES, WORRY_TARGETS,
};
pub use week::{
    build_week_dataset, SlotCounts, SlotIndex, SlotStatus, WeekDataset, WeekError, DAYS_PER_WEEK,
    SLOTS_PER_WEEK,
};
pub use window::{WindowSpan, WindowTimes, WindowTimesError};
